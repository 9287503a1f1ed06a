#include <doctest.h>

#include <algorithm>
#include <lorder/enumerate.hpp>
#include <map>
#include <set>

using namespace lorder;

namespace {

RewritingSystem complete(const Presentation& p) {
  RewritingSystem sys = knuth_bendix(p);
  REQUIRE(sys.confluent());
  return sys;
}

}  // namespace

TEST_CASE("ball of Z^2 has the taxicab profile") {
  Presentation p = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(p);
  Ball ball = build_ball(sys, 4);
  // #B(r) = 2r^2 + 2r + 1 for the rank-2 free abelian group.
  CHECK(ball.sizes() == std::vector<std::size_t>{1, 5, 13, 25, 41});
}

TEST_CASE("ball of the free group grows as 2*3^r - 1") {
  Presentation p = Presentation::make("ab", {});
  RewritingSystem sys = complete(p);
  Ball ball = build_ball(sys, 5);
  CHECK(ball.sizes() == std::vector<std::size_t>{1, 5, 17, 53, 161, 485});
}

TEST_CASE("ball multiplication agrees with rewriting on every pair") {
  Presentation p = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(p);
  Ball ball = build_ball(sys, 3);
  for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
    for (int j = 0; j < static_cast<int>(ball.size()); ++j) {
      Word prod = ball.rep(i);
      const Word& rj = ball.rep(j);
      prod.insert(prod.end(), rj.begin(), rj.end());
      Word nf = sys.reduce(prod);
      int expect = nf.size() <= static_cast<std::size_t>(ball.radius()) ? ball.find(nf)
                                                                        : kOutOfBall;
      CHECK(ball.mul(i, j) == expect);
    }
  }
}

TEST_CASE("ball group axioms: identity, inverses, closure under inversion") {
  Presentation p = Presentation::make("ab", {});
  RewritingSystem sys = complete(p);
  Ball ball = build_ball(sys, 3);
  CHECK(ball.rep(0).empty());
  for (int i = 0; i < static_cast<int>(ball.size()); ++i) {
    CHECK(ball.mul(0, i) == i);
    CHECK(ball.mul(i, 0) == i);
    CHECK(ball.mul(i, ball.inv(i)) == 0);
    CHECK(ball.mul(ball.inv(i), i) == 0);
    CHECK(ball.inv(ball.inv(i)) == i);
  }
}

TEST_CASE("lazy and full-table balls agree") {
  Presentation p = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(p);
  Ball full = build_ball(sys, 3);
  BallOptions lazy_opts;
  lazy_opts.table_rep_cap = 0;  // force memoized multiplication
  Ball lazy = build_ball(sys, 3, lazy_opts);
  REQUIRE(full.size() == lazy.size());
  CHECK(full.has_full_table());
  CHECK(!lazy.has_full_table());
  for (int i = 0; i < static_cast<int>(full.size()); ++i) {
    for (int j = 0; j < static_cast<int>(full.size()); ++j) {
      CHECK(full.mul(i, j) == lazy.mul(i, j));
    }
  }
}

TEST_CASE("ball enumeration respects the representative cap") {
  Presentation p = Presentation::make("ab", {});
  RewritingSystem sys = complete(p);
  BallOptions opts;
  opts.max_reps = 100;
  CHECK_THROWS_AS(build_ball(sys, 5, opts), ResourceExceeded);
}

TEST_CASE("growth fit recovers a planted exponential") {
  // sizes[r] = 3 * 2^r exactly; the log-linear fit must be exact.
  std::vector<std::size_t> sizes = {3, 6, 12, 24, 48, 96};
  GrowthFit fit = fit_growth(sizes, 1, 5);
  CHECK(fit.growth == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(fit.coefficient == doctest::Approx(3.0).epsilon(1e-9));
  CHECK(fit.residual == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("coset enumeration of S3 over a point stabilizer") {
  // <a, b | a^2, b^2, (ab)^3> with subgroup <a> has index 3.
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  auto res = todd_coxeter(p, {p.parse_word("a")});
  REQUIRE(res.table.has_value());
  CHECK(res.table->index() == 3);
  CHECK(res.table->relators_satisfied(p));
  CHECK(!res.table->is_normal());
}

TEST_CASE("coset enumeration of the trivial subgroup gives the group order") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  auto res = todd_coxeter(p, {});
  REQUIRE(res.table.has_value());
  CHECK(res.table->index() == 6);
  CHECK(res.table->relators_satisfied(p));
}

TEST_CASE("coset enumeration overflow is reported, not fabricated") {
  Presentation p = Presentation::make("ab", {});  // free: trivial subgroup has infinite index
  auto res = todd_coxeter(p, {}, 500);
  CHECK(res.overflow);
  CHECK(!res.table.has_value());
}

TEST_CASE("standardization is idempotent and preserves the action") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  auto res = todd_coxeter(p, {p.parse_word("ab")});
  REQUIRE(res.table.has_value());
  CosetTable t = standardize(*res.table);
  CHECK(standardize(t) == t);
  CHECK(t.relators_satisfied(p));
}

TEST_CASE("low-index classes of Z") {
  Presentation p = Presentation::make("a", {});
  auto subs = low_index_subgroups(p, 3);
  // nZ for n = 1, 2, 3: one class per index.
  REQUIRE(subs.size() == 3);
  for (std::size_t n = 0; n < subs.size(); ++n) {
    CHECK(subs[n].index() == static_cast<int>(n) + 1);
    CHECK(subs[n].is_normal());
  }
}

TEST_CASE("low-index classes of S3 match the subgroup lattice") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  auto subs = low_index_subgroups(p, 6);
  // S3: whole group, A3 (index 2), three conjugate order-2 subgroups
  // (one class, index 3), trivial subgroup (index 6).
  std::map<int, int> by_index;
  for (const auto& t : subs) ++by_index[t.index()];
  CHECK(by_index == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {6, 1}});
}

TEST_CASE("low-index classes of the Klein four group") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "abAB"});
  auto subs = low_index_subgroups(p, 4);
  // Z/2 x Z/2: whole group, three index-2 subgroups, trivial subgroup.
  std::map<int, int> by_index;
  for (const auto& t : subs) ++by_index[t.index()];
  CHECK(by_index == std::map<int, int>{{1, 1}, {2, 3}, {4, 1}});
  for (const auto& t : subs) CHECK(t.is_normal());
}
