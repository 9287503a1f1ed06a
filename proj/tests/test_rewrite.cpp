#include <doctest.h>

#include <lorder/rewrite.hpp>
#include <lorder/words.hpp>
#include <set>

using namespace lorder;

namespace {

RewritingSystem complete(const Presentation& p) {
  RewritingSystem sys = knuth_bendix(p);
  REQUIRE(sys.confluent());
  return sys;
}

// All distinct normal forms, by closing {ε} under right multiplication.
std::set<Word> normal_forms(const RewritingSystem& sys, const Presentation& p) {
  std::set<Word> seen = {Word{}};
  std::vector<Word> frontier = {Word{}};
  while (!frontier.empty()) {
    std::vector<Word> next;
    for (const Word& w : frontier) {
      for (std::size_t g = 0; g < p.alphabet.size(); ++g) {
        for (bool invflag : {false, true}) {
          Word ext = w;
          ext.push_back(Letter::make(static_cast<int>(g), invflag));
          Word nf = sys.reduce(ext);
          if (seen.insert(nf).second) next.push_back(nf);
        }
      }
    }
    frontier = std::move(next);
    REQUIRE(seen.size() < 10000);  // all test groups here are small
  }
  return seen;
}

}  // namespace

TEST_CASE("shortlex compares by length, then by letter code") {
  Presentation p = Presentation::make("ab", {});
  auto w = [&](const char* s) { return p.parse_word(s); };
  CHECK(shortlex_compare(w("a"), w("ab")) == Cmp::Less);
  CHECK(shortlex_compare(w("a"), w("A")) == Cmp::Less);   // a < a^-1
  CHECK(shortlex_compare(w("A"), w("b")) == Cmp::Less);   // a^-1 < b
  CHECK(shortlex_compare(w("ba"), w("ab")) == Cmp::Greater);
  CHECK(shortlex_compare(w("ab"), w("ab")) == Cmp::Equal);
}

TEST_CASE("knuth_bendix completes on Z^2") {
  Presentation z2 = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(z2);
  CHECK(sys.rules().size() == 8);
  CHECK(sys.word_equal(z2.parse_word("ab"), z2.parse_word("ba")));
}

TEST_CASE("reduction is idempotent and order-respecting") {
  Presentation p = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(p);
  for (const char* s : {"abab", "bbaA", "BBaaab", "ABab", "aaaBBB"}) {
    Word w = p.parse_word(s);
    Word once = sys.reduce(w);
    CHECK(sys.reduce(once) == once);
    CHECK(shortlex_compare(once, w) != Cmp::Greater);
  }
}

TEST_CASE("confluence certified by exhaustive critical-pair check") {
  for (auto [gens, rels] : {std::pair<const char*, std::vector<std::string>>{"ab", {"abAB"}},
                            {"a", {"aaa"}},
                            {"ab", {"abaB"}},
                            {"ab", {"aa", "bb", "ababab"}}}) {
    RewritingSystem sys = complete(Presentation::make(gens, rels));
    CHECK(unresolved_critical_pairs(sys).empty());
  }
}

TEST_CASE("rules are interreduced and shortlex-oriented") {
  Presentation p = Presentation::make("ab", {"aa", "bb", "ababab"});
  RewritingSystem sys = complete(p);
  const auto& rules = sys.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    CHECK(shortlex_compare(rules[i].lhs, rules[i].rhs) == Cmp::Greater);
    // No other lhs occurs inside this rule's lhs or rhs.
    for (std::size_t j = 0; j < rules.size(); ++j) {
      if (i != j) {
        CHECK(std::search(rules[i].lhs.begin(), rules[i].lhs.end(), rules[j].lhs.begin(),
                          rules[j].lhs.end()) == rules[i].lhs.end());
      }
      CHECK(std::search(rules[i].rhs.begin(), rules[i].rhs.end(), rules[j].lhs.begin(),
                        rules[j].lhs.end()) == rules[i].rhs.end());
    }
  }
}

TEST_CASE("finite group oracles: normal-form counts match group orders") {
  struct Row {
    const char* gens;
    std::vector<std::string> rels;
    std::size_t order;
  };
  for (const Row& row : {
           Row{"a", {"aaa"}, 3},
           Row{"ab", {"aa", "bb", "ababab"}, 6},            // S3
           Row{"ab", {"aa", "bb", "abAB"}, 4},              // Klein four
           Row{"ab", {"aa", "bbbbbbb", "abab"}, 14},        // D7
           Row{"ab", {"aaa", "bbb", "abab"}, 12},           // A4
           Row{"ab", {"aa", "bbb", "abababab"}, 24},        // S4
       }) {
    Presentation p = Presentation::make(row.gens, row.rels);
    RewritingSystem sys = complete(p);
    CHECK(normal_forms(sys, p).size() == row.order);
  }
}

TEST_CASE("free group completion keeps only the trivial rules") {
  Presentation p = Presentation::make("ab", {});
  RewritingSystem sys = complete(p);
  CHECK(sys.rules().size() == 4);  // x x^-1 -> empty for each letter
  CHECK(sys.reduce(p.parse_word("abBA")).empty());
}

TEST_CASE("bounded confluence: divergent completion still certifies a bound") {
  Presentation trefoil = Presentation::make("ab", {"aaBBB"});
  KbOptions opts;
  opts.target_confluence = 12;
  RewritingSystem sys = knuth_bendix(trefoil, opts);
  CHECK(sys.status() == RewriteStatus::BudgetExceeded);
  CHECK_FALSE(sys.confluent());
  CHECK(sys.confluence_bound() >= 12);
  CHECK(sys.confluent_up_to(12));
  CHECK_FALSE(sys.confluent_up_to(1000));
  // Independent re-certification from the rule set alone.
  CHECK(certified_confluence_bound(sys) >= sys.confluence_bound());
  // Below the bound, reduction decides equalities: a^2 = b^3 here.
  CHECK(sys.reduce(trefoil.parse_word("aa")) == sys.reduce(trefoil.parse_word("bbb")));
  CHECK(sys.reduce(trefoil.parse_word("abBA")).empty());
}

TEST_CASE("bounded confluence: deeper fixpoints extend shallower ones unchanged") {
  Presentation trefoil = Presentation::make("ab", {"aaBBB"});
  KbOptions shallow, deep;
  shallow.target_confluence = 12;
  deep.target_confluence = 16;
  RewritingSystem a = knuth_bendix(trefoil, shallow);
  RewritingSystem b = knuth_bendix(trefoil, deep);
  REQUIRE(b.confluence_bound() >= 16);
  std::vector<RewriteRule> restricted;
  for (const auto& r : b.rules()) {
    if (r.lhs.size() <= a.confluence_bound()) restricted.push_back(r);
  }
  REQUIRE(restricted.size() == a.rules().size());
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    CHECK(restricted[i].lhs == a.rules()[i].lhs);
    CHECK(restricted[i].rhs == a.rules()[i].rhs);
  }
}

TEST_CASE("fully confluent systems certify an unlimited bound") {
  Presentation z2 = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(z2);
  CHECK(sys.confluent_up_to(1000000));
  CHECK(certified_confluence_bound(sys) == SIZE_MAX);
}

TEST_CASE("bounded systems serialize with their bound") {
  Presentation trefoil = Presentation::make("ab", {"aaBBB"});
  KbOptions opts;
  opts.target_confluence = 12;
  RewritingSystem sys = knuth_bendix(trefoil, opts);
  RewritingSystem back = RewritingSystem::deserialize(sys.serialize(trefoil), trefoil);
  CHECK(back.status() == RewriteStatus::BudgetExceeded);
  CHECK(back.confluence_bound() == sys.confluence_bound());
  Word w = trefoil.parse_word("aababB");
  CHECK(back.reduce(w) == sys.reduce(w));
}

TEST_CASE("budget exhaustion is reported, never silently confluent") {
  Presentation trefoil = Presentation::make("ab", {"aaBBB"});
  KbOptions opts;
  opts.max_rules = 200;
  RewritingSystem sys = knuth_bendix(trefoil, opts);
  CHECK(sys.status() == RewriteStatus::BudgetExceeded);
  CHECK_THROWS_AS((void)sys.word_equal(trefoil.parse_word("a"), trefoil.parse_word("b")),
                  NotConfluentError);
}

TEST_CASE("regression: the length-12 fixpoint of the Weeks-manifold group") {
  Presentation weeks = Presentation::make("ab", {"bababAbbA", "ababaBaaB"});
  KbOptions opts;
  opts.target_confluence = 12;
  RewritingSystem sys = knuth_bendix(weeks, opts);
  CHECK(sys.status() == RewriteStatus::BudgetExceeded);  // canonical system diverges
  CHECK(sys.confluence_bound() == 12);
  CHECK(sys.rules().size() == 787);
  // Both relators and a known consequence reduce to the identity.
  for (const char* w : {"bababAbbA", "ababaBaaB", "BaBBaaBaaB"}) {
    CHECK(sys.reduce(weeks.parse_word(w)).empty());
  }
}

TEST_CASE("serialization round-trips the rule set") {
  Presentation p = Presentation::make("ab", {"abAB"});
  RewritingSystem sys = complete(p);
  std::string text = sys.serialize(p);
  RewritingSystem back = RewritingSystem::deserialize(text, p);
  CHECK(back.confluent());
  CHECK(back.rules().size() == sys.rules().size());
  Word w = p.parse_word("bbaABa");
  CHECK(back.reduce(w) == sys.reduce(w));
}
