#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lorder/rewrite.hpp"
#include "lorder/words.hpp"

namespace lorder {

inline constexpr int kOutOfBall = -1;

struct ResourceExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BallOptions {
  std::size_t max_reps = 2'000'000;
  std::size_t table_rep_cap = 20000;          // precompute the table up to this many reps
  std::size_t table_byte_cap = 512ull << 20;  // and this much memory; else memoize on demand
  std::size_t memo_entry_cap = 20'000'000;    // on-demand memo entries before giving up
};

// The ball B(r): canonical shortlex representatives of all elements of
// normal-form length <= r, with identity at index 0, closed under
// inversion, and a (possibly lazy) multiplication table.
class Ball {
 public:
  int radius() const { return radius_; }
  const RewritingSystem& system() const { return *sys_; }
  std::size_t size() const { return reps_.size(); }
  const std::vector<Word>& reps() const { return reps_; }
  const Word& rep(int id) const { return reps_[static_cast<std::size_t>(id)]; }
  int inv(int id) const { return inv_[static_cast<std::size_t>(id)]; }
  int find(const Word& normal_form) const;
  bool has_full_table() const { return full_table_; }

  // Product id, or kOutOfBall when the normal form is longer than the radius.
  int mul(int i, int j) const;

  // #B(0..radius), cumulative.
  std::vector<std::size_t> sizes() const;

 private:
  friend Ball build_ball(const RewritingSystem&, int, const BallOptions&);

  int radius_ = 0;
  const RewritingSystem* sys_ = nullptr;
  std::vector<Word> reps_;
  std::vector<int> inv_;
  std::vector<std::size_t> sphere_offsets_;  // first id of each length layer
  std::unordered_map<Word, int, WordHash> index_;
  bool full_table_ = false;
  std::vector<std::int32_t> table_;
  std::size_t memo_cap_ = 0;
  mutable std::unordered_map<std::uint64_t, int> memo_;
};

Ball build_ball(const RewritingSystem& sys, int radius, const BallOptions& opts = {});

struct GrowthFit {
  double coefficient;  // A in  #B(r) ~ A * C^r
  double growth;       // C
  double residual;     // rms residual of the log-linear fit
};

// Least-squares fit of log #B(r) over radii [r_lo, r_hi].
GrowthFit fit_growth(const std::vector<std::size_t>& sizes, int r_lo, int r_hi);

// ---------------------------------------------------------------------------
// Coset enumeration.

struct CosetTable {
  int num_letters = 0;
  std::vector<std::vector<int>> rows;  // rows[coset][letter.code] -> coset, or -1
  bool complete = false;

  int index() const { return static_cast<int>(rows.size()); }
  int at(int coset, Letter l) const {
    return rows[static_cast<std::size_t>(coset)][l.code];
  }
  // Trace a word from a coset; -1 if the trace hits an undefined entry.
  int trace(int coset, const Word& w) const;
  bool relators_satisfied(const Presentation& p) const;
  // Normal iff the induced permutation image has order equal to the index.
  bool is_normal() const;
  std::string render() const;

  bool operator==(const CosetTable&) const = default;
};

CosetTable standardize(const CosetTable& t, int basepoint = 0);

struct ToddCoxeterResult {
  std::optional<CosetTable> table;  // empty on overflow
  bool overflow = false;
  std::size_t cosets_defined = 0;
};

// HLT-strategy coset enumeration over <subgens>, standardized on success.
ToddCoxeterResult todd_coxeter(const Presentation& p, const std::vector<Word>& subgens,
                               std::size_t max_cosets = 200000);

// All conjugacy classes of subgroups of index <= max_index, one
// standardized complete table per class, sorted by index.
std::vector<CosetTable> low_index_subgroups(const Presentation& p, int max_index);

}  // namespace lorder
