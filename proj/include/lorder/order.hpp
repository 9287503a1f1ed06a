#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "lorder/enumerate.hpp"
#include "lorder/rewrite.hpp"
#include "lorder/words.hpp"

namespace lorder {

// One derivation step: product is the normal form of x * y, both of
// which must be assumptions on the path or earlier products.
struct ChainStep {
  Word x;
  Word y;
  Word product;
};

// Decision tree refuting every positive cone.  Internal nodes branch on
// "g in P" / "g^-1 in P"; leaves derive the identity from the
// assumptions on their path.
struct CertNode {
  bool is_leaf = false;
  Word branch;
  std::unique_ptr<CertNode> positive;
  std::unique_ptr<CertNode> negative;
  std::vector<ChainStep> steps;
};

struct Certificate {
  std::string presentation_text;
  std::string presentation_hash;
  std::string letter_order;
  int radius = 0;
  // 0 when the producing rewriting system was fully confluent; otherwise
  // the certified confluence bound it carried (always >= 2*radius).
  std::size_t confluence_bound = 0;
  std::vector<Word> seed;
  std::unique_ptr<CertNode> root;

  int leaf_count() const;
  nlohmann::json to_json(const Presentation& p) const;
  static Certificate from_json(const nlohmann::json& j, const Presentation& p);
};

enum class VerdictKind { NotLeftOrderable, ConsistentAtRadius, Inconclusive };
enum class InconclusiveReason { None, DepthCap, BudgetExceeded, StabilityCheckFailed };

struct OrderVerdict {
  VerdictKind kind;
  int radius = 0;
  std::shared_ptr<Certificate> certificate;  // present iff NotLeftOrderable
  std::vector<Word> witness;                 // cone members iff ConsistentAtRadius
  InconclusiveReason reason = InconclusiveReason::None;
  // Word-problem certification used: 0 = fully confluent system, else
  // the certified confluence bound of the (bounded) system.
  std::size_t confluence_bound = 0;

  static OrderVerdict not_left_orderable(int radius, Certificate cert);
  static OrderVerdict consistent(int radius, std::vector<Word> witness);
  static OrderVerdict inconclusive(int radius, InconclusiveReason reason);
  std::string kind_string() const;
};

struct ConeSearchOptions {
  int depth_cap = 16;
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
  // The search tracks signs of derived elements longer than the radius;
  // these bound the registry of such elements and the product memo.
  std::size_t ext_word_cap = 2'000'000;
  std::size_t product_memo_cap = 20'000'000;
  // Longest derived element tracked; 0 means twice the radius.  A
  // contradiction through a trivial word of length T only needs tracking
  // up to ceil(T/2), and smaller limits keep the registry near-linear.
  std::size_t ext_length_limit = 0;
  // Failed-literal propagation: before branching, trial-assume each of
  // the first `lookahead_window` undecided elements (both signs); a
  // contradicted sign forces its opposite without consuming depth.
  int lookahead_window = 256;
};

// The recursive cone search over one ball.  Seed elements are taken as
// positive without branching (the caller owns the symmetry argument
// that makes this sound).
OrderVerdict construct_positive_cone(const Ball& ball, const Presentation& p,
                                     const std::vector<Word>& seed,
                                     const ConeSearchOptions& opts = {});

struct CheckOptions {
  std::vector<int> radii = {3, 4, 5, 6};
  int depth_cap = 16;
  bool seed_first_generator = true;
  // When true, insist on a fully confluent rewriting system.  When false
  // (the default), a system certified confluent on words of length
  // <= 2*max(radii) is accepted; in that mode the driver additionally
  // completes one cap deeper and cross-checks that no ball representative
  // collapses under the deeper system.
  bool require_confluent = false;
  KbOptions kb;
  BallOptions ball;
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

// Driver: completion, then ball + cone search per radius; returns the
// first NotLeftOrderable, else the last radius's outcome.
OrderVerdict test_left_orderability(const Presentation& p, const CheckOptions& opts = {});

struct CertCheckResult {
  bool valid = false;
  std::string failure;  // first failing step, when invalid
};

// Independent validation: rebuilds the rewriting system and replays
// every derivation chain; never consults the search.
CertCheckResult check_certificate(const Certificate& cert, const Presentation& p,
                                  const KbOptions& kb = {});

}  // namespace lorder
