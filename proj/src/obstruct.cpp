#include "lorder/obstruct.hpp"

#include <algorithm>

namespace lorder {

void ObstructionReport::finalize(std::string not_applicable_reason) {
  if (!not_applicable_reason.empty()) {
    conclusion_ = ObstructionConclusion::NotApplicable;
    detail_ = std::move(not_applicable_reason);
    return;
  }
  if (!ambient_verdict || ambient_verdict->kind != VerdictKind::NotLeftOrderable) {
    conclusion_ = ObstructionConclusion::Inconclusive;
    detail_ = "ambient group not shown non-left-orderable";
    return;
  }
  for (const auto& s : subgroups) {
    if (s.verdict.kind != VerdictKind::NotLeftOrderable) {
      conclusion_ = ObstructionConclusion::Inconclusive;
      detail_ = "subgroup (index " + std::to_string(s.index) + ", class " +
                std::to_string(s.table_id) + ") not shown non-left-orderable";
      return;
    }
  }
  conclusion_ = ObstructionConclusion::NoFaithfulCircleAction;
  detail_.clear();
}

ObstructionReport circle_obstruction(const Presentation& p, const CheckOptions& opts) {
  ObstructionReport report;
  report.h1 = h1(p);
  report.z2_cohomology_trivial = !report.h1.has_even_torsion() && report.h1.is_finite();

  if (!report.h1.is_finite()) {
    report.finalize("H1 is infinite; this obstruction template needs a rational homology sphere");
    return report;
  }
  if (report.h1.has_even_torsion()) {
    report.finalize("H1 has even torsion; orientation-preservation argument unavailable");
    return report;
  }

  report.ambient_verdict = test_left_orderability(p, opts);

  // Candidate multisection indices: the possible orders of nonzero
  // elements of H^2 = H1, i.e. the divisors > 1 of the exponent.
  BigInt exponent = report.h1.exponent();
  for (BigInt d = 2; d <= exponent; ++d) {
    if (exponent % d == 0) report.n_candidates.push_back(static_cast<long>(d));
  }

  for (long n : report.n_candidates) {
    auto tables = low_index_subgroups(p, static_cast<int>(n));
    int table_id = 0;
    for (const auto& t : tables) {
      if (t.index() != static_cast<int>(n)) continue;
      SubgroupResult res;
      res.candidate_order = static_cast<int>(n);
      res.index = t.index();
      res.table_id = table_id++;
      res.normal = t.is_normal();
      SubgroupPresentation sp = tietze_simplify(subgroup_presentation(p, t));
      res.presentation_text = sp.presentation.render();
      res.verdict = test_left_orderability(sp.presentation, opts);
      report.subgroups.push_back(std::move(res));
    }
  }
  report.finalize("");
  return report;
}

std::vector<IdentityCheck> verify_identity_corpus(
    const Presentation& p, const std::vector<std::pair<Word, std::vector<ConjugateFactor>>>& corpus,
    const KbOptions& kb) {
  RewritingSystem sys = knuth_bendix(p, kb);
  // Reduction to the empty word is a sound triviality proof with any
  // sound rule set; with a non-confluent system a failed reduction just
  // leaves the word unverified.  Still insist on some certification so
  // a half-finished rule set is never consulted silently.
  if (!sys.confluent() && sys.confluence_bound() == 0) {
    throw NotConfluentError("identity corpus needs a certified rewriting system");
  }
  std::vector<IdentityCheck> out;
  for (const auto& [word, factors] : corpus) {
    IdentityCheck c;
    c.word = word;
    c.factorization = factors;
    c.normal_form = sys.reduce(word);
    c.reduces_to_identity = c.normal_form.empty();
    if (!factors.empty()) {
      c.factorization_ok = verify_conjugate_product(word, factors, p);
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<QuotientCheck> check_quotients_cyclic(const Presentation& p,
                                                  const std::vector<Word>& words, long n,
                                                  std::size_t max_cosets) {
  std::vector<QuotientCheck> out;
  for (const auto& w : words) {
    QuotientCheck c;
    c.word = w;
    Presentation extended = p;
    Word r = cyclic_reduce(w);
    if (!r.empty()) extended.relators.push_back(r);
    ToddCoxeterResult tc = todd_coxeter(extended, {}, max_cosets);
    if (tc.overflow) {
      c.overflow = true;
    } else {
      c.order = static_cast<std::size_t>(tc.table->index());
      AbelianInvariants inv = h1(extended);
      c.cyclic = inv.free_rank == 0 && inv.torsion.size() <= 1 &&
                 (inv.torsion.empty() ? c.order == 1
                                      : inv.torsion[0] == BigInt(static_cast<long long>(c.order)));
      c.ok = c.order == static_cast<std::size_t>(n) && c.cyclic;
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace lorder
