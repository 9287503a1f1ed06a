#include <doctest.h>

#include <lorder/obstruct.hpp>

using namespace lorder;

TEST_CASE("conjugate-product identities in the free group") {
  Presentation p = Presentation::make("ab", {"bababAbbA", "ababaBaaB"});
  // (B r1^-1 B^-1) * r2 freely reduces to BaBBaaBaaB.
  Word target = p.parse_word("BaBBaaBaaB");
  std::vector<ConjugateFactor> factors = {{p.parse_word("B"), 0, -1},
                                          {Word{}, 1, 1}};
  CHECK(verify_conjugate_product(target, factors, p));
  // A wrong sign must fail.
  factors[0].sign = 1;
  CHECK(!verify_conjugate_product(target, factors, p));
  // So must a corrupted target.
  factors[0].sign = -1;
  CHECK(!verify_conjugate_product(p.parse_word("BaBBaaBaaBa"), factors, p));
}

TEST_CASE("identity corpus verification on a finite group") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  std::vector<std::pair<Word, std::vector<ConjugateFactor>>> corpus = {
      {p.parse_word("aa"), {}},
      {p.parse_word("ababab"), {}},
      {p.parse_word("abaaba"), {}},  // trivial only through both torsion relators
  };
  auto checks = verify_identity_corpus(p, corpus);
  REQUIRE(checks.size() == 3);
  for (const auto& c : checks) {
    CHECK(c.reduces_to_identity);
    CHECK(c.normal_form.empty());
  }
  // A nontrivial word is reported with its normal form, not silently passed.
  corpus = {{p.parse_word("ab"), {}}};
  checks = verify_identity_corpus(p, corpus);
  CHECK(!checks[0].reduces_to_identity);
  CHECK(!checks[0].normal_form.empty());
}

TEST_CASE("cyclic quotient orders via coset enumeration") {
  // Z/15: killing a^3 leaves Z/3, killing a^5 leaves Z/5.
  Presentation p = Presentation::make("a", {"aaaaaaaaaaaaaaa"});
  auto c3 = check_quotients_cyclic(p, {p.parse_word("aaa")}, 3);
  REQUIRE(c3.size() == 1);
  CHECK(c3[0].ok);
  CHECK(c3[0].order == 3);
  CHECK(c3[0].cyclic);
  auto c5 = check_quotients_cyclic(p, {p.parse_word("aaaaa")}, 3);
  CHECK(!c5[0].ok);  // order is 5, not 3
  CHECK(c5[0].order == 5);
}

TEST_CASE("quotient check flags non-cyclic quotients") {
  // Killing the commutator in F2 gives Z^2: infinite, reported as overflow.
  Presentation p = Presentation::make("ab", {});
  auto res = check_quotients_cyclic(p, {p.parse_word("abAB")}, 5, 2000);
  REQUIRE(res.size() == 1);
  CHECK(res[0].overflow);
  CHECK(!res[0].ok);
}

TEST_CASE("obstruction is not applicable with infinite abelianization") {
  Presentation p = Presentation::make("ab", {"abAB"});
  ObstructionReport rep = circle_obstruction(p);
  CHECK(rep.conclusion() == ObstructionConclusion::NotApplicable);
  CHECK(!rep.h1.is_finite());
}

TEST_CASE("obstruction is not applicable with even torsion") {
  Presentation p = Presentation::make("a", {"aa"});
  ObstructionReport rep = circle_obstruction(p);
  CHECK(rep.conclusion() == ObstructionConclusion::NotApplicable);
  CHECK(rep.h1.has_even_torsion());
}

TEST_CASE("obstruction pipeline is honest about Z/3") {
  // Z/3 acts faithfully on the circle by rotation, so the pipeline must
  // NOT conclude: the ambient group is refuted by torsion, but the
  // index-3 subgroup is trivial, hence orderable.
  Presentation p = Presentation::make("a", {"aaa"});
  CheckOptions opts;
  opts.radii = {2, 3};
  ObstructionReport rep = circle_obstruction(p, opts);
  CHECK(rep.conclusion() == ObstructionConclusion::Inconclusive);
  CHECK(rep.z2_cohomology_trivial);
  REQUIRE(rep.ambient_verdict.has_value());
  CHECK(rep.ambient_verdict->kind == VerdictKind::NotLeftOrderable);
  CHECK(rep.n_candidates == std::vector<long>{3});
  REQUIRE(!rep.subgroups.empty());
  for (const auto& s : rep.subgroups) {
    CHECK(s.index == 3);
    CHECK(s.verdict.kind == VerdictKind::ConsistentAtRadius);
  }
}

TEST_CASE("no conclusion without finite first homology") {
  Presentation z = Presentation::make("a", {});
  CHECK(circle_obstruction(z).conclusion() == ObstructionConclusion::NotApplicable);
}
