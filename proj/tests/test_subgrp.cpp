#include <doctest.h>

#include <lorder/abelian.hpp>
#include <lorder/subgrp.hpp>

using namespace lorder;

namespace {

SubgroupPresentation derive(const Presentation& p, const std::vector<std::string>& subgens,
                            int expect_index) {
  std::vector<Word> gens;
  for (const auto& s : subgens) gens.push_back(p.parse_word(s));
  auto res = todd_coxeter(p, gens);
  REQUIRE(res.table.has_value());
  REQUIRE(res.table->index() == expect_index);
  return subgroup_presentation(p, *res.table);
}

}  // namespace

TEST_CASE("Schreier index formula holds before simplification") {
  // rank(H) - 1 = [G:H] * (rank(G) - 1) for free G; in general the raw
  // Reidemeister-Schreier output has n*g - n + 1 generators and n*r relators.
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  SubgroupPresentation sp = derive(p, {"a"}, 3);
  CHECK(sp.raw_generator_count == 3 * 2 - 3 + 1);
  CHECK(sp.raw_relator_count == 3 * 3);
}

TEST_CASE("index-2 subgroup of the Klein bottle group is Z^2") {
  // <a, b | abab^-1>; the orientation subgroup <a, b^2> is free abelian.
  Presentation p = Presentation::make("ab", {"abaB"});
  SubgroupPresentation sp = tietze_simplify(derive(p, {"a", "bb"}, 2));
  CHECK(h1(sp.presentation).to_string() == "Z + Z");
  RewritingSystem sys = knuth_bendix(sp.presentation);
  REQUIRE(sys.confluent());
  // Two commuting generators: every length-2 product has one normal form.
  const auto& q = sp.presentation;
  CHECK(sys.reduce(q.parse_word("ba")) == sys.reduce(q.parse_word("ab")));
}

TEST_CASE("index-n subgroups of Z are again Z") {
  Presentation p = Presentation::make("a", {});
  for (int n = 2; n <= 4; ++n) {
    std::string gen(static_cast<std::size_t>(n), 'a');
    SubgroupPresentation sp = tietze_simplify(derive(p, {gen}, n));
    CHECK(h1(sp.presentation).to_string() == "Z");
  }
}

TEST_CASE("subgroup of a free group is free of Nielsen-Schreier rank") {
  // Index-2 subgroup of F2 is free of rank 2*(2-1)+1 = 3.
  Presentation p = Presentation::make("ab", {});
  SubgroupPresentation sp = tietze_simplify(derive(p, {"a", "bb", "bab"}, 2));
  CHECK(sp.presentation.relators.empty());
  CHECK(h1(sp.presentation).to_string() == "Z + Z + Z");
}

TEST_CASE("schreier map expresses subgroup generators as ambient words") {
  Presentation p = Presentation::make("ab", {"abaB"});
  SubgroupPresentation sp = tietze_simplify(derive(p, {"a", "bb"}, 2));
  REQUIRE(sp.schreier_map.size() == sp.presentation.alphabet.size());
  // Each mapped word must lie in the subgroup: it fixes the base coset.
  for (const auto& w : sp.schreier_map) {
    CHECK(sp.table.trace(0, w) == 0);
  }
  CHECK(sp.origin_hash == p.hash());
}

TEST_CASE("simplification preserves the abelianization") {
  Presentation weeks = Presentation::make("ab", {"bababAbbA", "ababaBaaB"});
  SubgroupPresentation raw =
      derive(weeks, {"a", "bbbbb", "baB", "bbaBB", "bbbaBBB", "bbbbaBBBB"}, 5);
  SubgroupPresentation simp = tietze_simplify(raw);
  CHECK(h1(raw.presentation) == h1(simp.presentation));
  CHECK(h1(simp.presentation).to_string() == "Z/5 + Z/25");
  // Simplification should not blow up the presentation.
  std::size_t raw_len = 0, simp_len = 0;
  for (const auto& r : raw.presentation.relators) raw_len += r.size();
  for (const auto& r : simp.presentation.relators) simp_len += r.size();
  CHECK(simp_len <= 3 * raw_len);
}
