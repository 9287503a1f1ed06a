#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lorder/abelian.hpp"
#include "lorder/order.hpp"
#include "lorder/subgrp.hpp"

namespace lorder {

struct SubgroupResult {
  int candidate_order = 0;  // the Euler-class order being tested
  int index = 0;
  int table_id = 0;
  bool normal = false;
  std::string presentation_text;
  OrderVerdict verdict;
};

enum class ObstructionConclusion { NoFaithfulCircleAction, Inconclusive, NotApplicable };

class ObstructionReport {
 public:
  AbelianInvariants h1;
  bool z2_cohomology_trivial = false;
  std::optional<OrderVerdict> ambient_verdict;
  std::vector<long> n_candidates;
  std::vector<SubgroupResult> subgroups;

  ObstructionConclusion conclusion() const { return conclusion_; }
  const std::string& detail() const { return detail_; }

 private:
  friend ObstructionReport circle_obstruction(const Presentation&, const CheckOptions&);
  // The conclusion is derived, never set directly: NoFaithfulCircleAction
  // requires finite h1, trivial Z/2 cohomology, and NotLeftOrderable for
  // the ambient group and every candidate-index subgroup.
  void finalize(std::string not_applicable_reason);

  ObstructionConclusion conclusion_ = ObstructionConclusion::Inconclusive;
  std::string detail_;
};

ObstructionReport circle_obstruction(const Presentation& p, const CheckOptions& opts = {});

struct IdentityCheck {
  Word word;
  std::vector<ConjugateFactor> factorization;  // optional, empty = none
  bool reduces_to_identity = false;
  bool factorization_ok = true;
  Word normal_form;  // nonempty iff the check failed
};

// Every corpus word must rewrite to the empty word; supplied
// factorizations additionally pass the free-group conjugate check.
std::vector<IdentityCheck> verify_identity_corpus(
    const Presentation& p, const std::vector<std::pair<Word, std::vector<ConjugateFactor>>>& corpus,
    const KbOptions& kb = {});

struct QuotientCheck {
  Word word;
  bool overflow = false;
  std::size_t order = 0;
  bool cyclic = false;
  bool ok = false;  // order == n and quotient cyclic
};

// Order of G / <<w>> via coset enumeration, plus a cyclicity check
// through the abelianization of the extended presentation.
std::vector<QuotientCheck> check_quotients_cyclic(const Presentation& p,
                                                  const std::vector<Word>& words, long n,
                                                  std::size_t max_cosets = 200000);

}  // namespace lorder
