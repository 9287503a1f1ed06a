#pragma once

#include <chrono>
#include <cstddef>
#include <string>
#include <vector>

#include "lorder/words.hpp"

namespace lorder {

enum class Cmp { Less, Equal, Greater };

// Length first, then lexicographic on letter codes (g1 < g1^-1 < g2 < ...).
Cmp shortlex_compare(const Word& u, const Word& v);

enum class RewriteStatus { Confluent, BudgetExceeded };

struct RewriteRule {
  Word lhs;
  Word rhs;
};

struct KbOptions {
  std::size_t max_rules = 20000;
  std::size_t max_lhs_length = 60;
  // When nonzero, completion may stop early once the system is certified
  // confluent on all words of length <= target_confluence, even if full
  // confluence was not reached.  0 means: pursue full confluence until a
  // budget runs out.
  std::size_t target_confluence = 0;
  std::chrono::steady_clock::time_point deadline =
      std::chrono::steady_clock::time_point::max();
};

struct NotConfluentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A shortlex rewriting system.  When status() == Confluent, reduce()
// yields the unique shortlex-least representative of each group element.
//
// When completion could not reach full confluence, the system may still
// carry a certified confluence bound N: every critical pair whose
// overlap word has length <= N joins, which (by Newman's lemma on the
// rewrite-closed set of words of length <= N, where length never
// increases) makes reduction confluent on all words of length <= N.
class RewritingSystem {
 public:
  RewritingSystem(int num_letters, std::vector<RewriteRule> rules, RewriteStatus status,
                  std::size_t confluence_bound = 0);

  int num_letters() const { return num_letters_; }
  RewriteStatus status() const { return status_; }
  bool confluent() const { return status_ == RewriteStatus::Confluent; }
  // Largest certified N as above; 0 when nothing is certified.
  std::size_t confluence_bound() const { return confluence_bound_; }
  bool confluent_up_to(std::size_t n) const {
    return confluent() || confluence_bound_ >= n;
  }
  const std::vector<RewriteRule>& rules() const { return rules_; }
  std::size_t max_rule_length() const;

  Word reduce(const Word& w) const;
  bool word_equal(const Word& u, const Word& v) const;  // throws NotConfluentError

  std::string serialize(const Presentation& p) const;
  static RewritingSystem deserialize(const std::string& text, const Presentation& p);

 private:
  void build_index();

  int num_letters_;
  std::vector<RewriteRule> rules_;  // interreduced, sorted by shortlex lhs
  RewriteStatus status_;
  std::size_t confluence_bound_ = 0;

  // Index automaton over the lhs set (Aho-Corasick with dense transitions).
  std::vector<int> delta_;  // state * num_letters_ -> state
  std::vector<int> match_;  // state -> rule index whose lhs ends here, or -1
};

// Shortlex Knuth-Bendix completion seeded from the relators plus the
// trivial rules x x^-1 -> empty.  Returns Confluent only when every
// critical pair of the interreduced system resolves.
RewritingSystem knuth_bendix(const Presentation& p, const KbOptions& opts = {});

// All unresolved critical pairs of the rule set; empty iff confluent.
// Exposed so tests can certify confluence independently of completion's
// own bookkeeping.
std::vector<std::pair<Word, Word>> unresolved_critical_pairs(const RewritingSystem& sys);

// Independent recomputation of the confluence bound: one less than the
// shortest overlap word among unresolved critical pairs, or SIZE_MAX
// when every critical pair joins.  O(rules^2); meant for tests.
std::size_t certified_confluence_bound(const RewritingSystem& sys);

}  // namespace lorder
