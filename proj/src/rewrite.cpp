#include "lorder/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <sstream>

namespace lorder {

Cmp shortlex_compare(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size() ? Cmp::Less : Cmp::Greater;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] != v[i]) return u[i] < v[i] ? Cmp::Less : Cmp::Greater;
  }
  return Cmp::Equal;
}

namespace {

// Aho-Corasick index over a set of rule left-hand sides.  matchlink
// chains let the reducer skip matches for deactivated rules.
struct RuleIndex {
  int L = 0;
  std::vector<int> delta;
  std::vector<int> fail;
  std::vector<int> terminal;   // rule id ending exactly at this state, or -1
  std::vector<int> matchlink;  // nearest terminal state in the fail chain (incl. self), or -1

  void build(int num_letters, const std::vector<Word>& lhss, const std::vector<int>& ids) {
    L = num_letters;
    std::vector<std::vector<int>> kids;
    kids.emplace_back(L, -1);
    terminal.assign(1, -1);
    for (std::size_t r = 0; r < lhss.size(); ++r) {
      int s = 0;
      for (Letter l : lhss[r]) {
        int& nxt = kids[static_cast<std::size_t>(s)][l.code];
        if (nxt < 0) {
          nxt = static_cast<int>(kids.size());
          kids.emplace_back(L, -1);
          terminal.push_back(-1);
        }
        s = nxt;
      }
      terminal[static_cast<std::size_t>(s)] = ids[r];
    }
    int n = static_cast<int>(kids.size());
    delta.assign(static_cast<std::size_t>(n) * L, 0);
    fail.assign(static_cast<std::size_t>(n), 0);
    matchlink.assign(static_cast<std::size_t>(n), -1);
    std::deque<int> bfs;
    for (int x = 0; x < L; ++x) {
      int c = kids[0][static_cast<std::size_t>(x)];
      if (c >= 0) {
        delta[static_cast<std::size_t>(x)] = c;
        fail[static_cast<std::size_t>(c)] = 0;
        bfs.push_back(c);
      }
    }
    while (!bfs.empty()) {
      int s = bfs.front();
      bfs.pop_front();
      int f = fail[static_cast<std::size_t>(s)];
      matchlink[static_cast<std::size_t>(s)] =
          terminal[static_cast<std::size_t>(s)] >= 0 ? s : matchlink[static_cast<std::size_t>(f)];
      for (int x = 0; x < L; ++x) {
        int c = kids[static_cast<std::size_t>(s)][static_cast<std::size_t>(x)];
        int viafail = delta[static_cast<std::size_t>(f) * L + x];
        if (c >= 0) {
          delta[static_cast<std::size_t>(s) * L + x] = c;
          fail[static_cast<std::size_t>(c)] = viafail;
          bfs.push_back(c);
        } else {
          delta[static_cast<std::size_t>(s) * L + x] = viafail;
        }
      }
    }
  }

  // Longest active lhs ending at state s, or -1.
  template <typename Active>
  int find_match(int s, Active&& active) const {
    int t = matchlink[static_cast<std::size_t>(s)];
    while (t >= 0) {
      int r = terminal[static_cast<std::size_t>(t)];
      if (active(r)) return r;
      t = matchlink[static_cast<std::size_t>(fail[static_cast<std::size_t>(t)])];
    }
    return -1;
  }

  template <typename Rules, typename Active>
  Word reduce(const Word& w, const Rules& rules, Active&& active) const {
    Word out;
    out.reserve(w.size());
    std::vector<int> states{0};
    states.reserve(w.size() + 1);
    Word todo(w.rbegin(), w.rend());
    while (!todo.empty()) {
      Letter x = todo.back();
      todo.pop_back();
      int s = delta[static_cast<std::size_t>(states.back()) * L + x.code];
      int r = find_match(s, active);
      if (r < 0) {
        out.push_back(x);
        states.push_back(s);
      } else {
        std::size_t k = rules[static_cast<std::size_t>(r)].lhs.size() - 1;
        out.resize(out.size() - k);
        states.resize(out.size() + 1);
        const Word& rhs = rules[static_cast<std::size_t>(r)].rhs;
        todo.insert(todo.end(), rhs.rbegin(), rhs.rend());
      }
    }
    return out;
  }
};

struct WorkRule {
  Word lhs;
  Word rhs;
  bool active = true;
};

class Completion {
 public:
  Completion(int num_letters, const KbOptions& opts) : L_(num_letters), opts_(opts) {}

  void add_equation(Word u, Word v) { equations_.emplace_back(std::move(u), std::move(v)); }

  // Shortest-rule-first expansion: each new rule is queued once and, when
  // popped, overlapped against every rule active at that moment.  Every
  // pair of surviving rules is covered by whichever member expanded later,
  // and pairs are visited in approximately increasing combined length
  // while the queue stays linear in the rule count.
  void run() {
    // Keep the working rule set short: derived equations whose reduced
    // lhs exceeds the cap are discarded (they are consequences of stored
    // rules, so no congruence information is lost).  Once saturation
    // stabilizes, a full critical-pair sweep over the surviving rules
    // either certifies confluence, feeds missed equations back in, or
    // raises the cap and continues.
    std::size_t seed_len = 2;
    for (const auto& [u, v] : equations_) {
      seed_len = std::max({seed_len, u.size(), v.size()});
    }
    current_cap_ = std::min(opts_.max_lhs_length,
                            std::max({seed_len, std::size_t{12}, opts_.target_confluence}));
    process_equations();
    for (;;) {
      while (!expand_.empty() && !budget_exceeded_) {
        if (std::chrono::steady_clock::now() > opts_.deadline) {
          budget_exceeded_ = true;
          break;
        }
        auto [len, i] = expand_.top();
        expand_.pop();
        (void)len;
        if (!rules_[static_cast<std::size_t>(i)].active) continue;
        expand_rule(i);
        process_equations();
      }
      if (budget_exceeded_) break;
      // A full interreduction can revive work: deactivated rules come
      // back as equations whose critical pairs still need processing.
      rebuild();
      process_equations();
      if (!expand_.empty()) continue;
      SweepOutcome sw = sweep();
      if (sw == SweepOutcome::Clean) {
        confluent_ = true;
        break;
      }
      if (sw == SweepOutcome::NeedLongerRules) {
        // Saturation below the cap plus a clean sub-cap sweep certify
        // confluence on all words of length <= cap: any critical pair
        // with overlap word that short has both completions (and hence
        // their shortlex-max) within the cap, so the sweep would have
        // found it.  Keep this state as the best certified fallback.
        take_snapshot(current_cap_);
        if (opts_.target_confluence != 0 && current_cap_ >= opts_.target_confluence) break;
        if (current_cap_ >= opts_.max_lhs_length) {
          budget_exceeded_ = true;
          break;
        }
        std::size_t next = current_cap_ * 3 / 2 + 1;
        if (opts_.target_confluence > current_cap_) {
          next = std::min(next, opts_.target_confluence);
        }
        current_cap_ = std::min(opts_.max_lhs_length, next);
      }
      process_equations();
    }
  }

  enum class SweepOutcome { Clean, FoundWork, NeedLongerRules };

  // Recheck every critical pair of the current active rules against the
  // current reductions.  Queues joinable work it finds; reports whether
  // anything was missing and whether it would need rules over the cap.
  SweepOutcome sweep() {
    bool need_longer = false;
    bool found = false;
    for (std::size_t i = 0; i < rules_.size(); ++i) {
      if (!rules_[i].active) continue;
      if (std::chrono::steady_clock::now() > opts_.deadline) {
        budget_exceeded_ = true;
        return SweepOutcome::FoundWork;
      }
      const Word li = rules_[i].lhs;  // copies: rules_ may move during reduce
      const Word ri = rules_[i].rhs;
      for (std::size_t k = 1; k < li.size(); ++k) {
        Word s(li.end() - static_cast<long>(k), li.end());
        std::vector<int> js;
        for_each_prefix_match(by_prefix_, s, [&](const Word& lj, int j) {
          if (rules_[static_cast<std::size_t>(j)].active && lj.size() > k) js.push_back(j);
        });
        for (int j : js) {
          const Word& lj = rules_[static_cast<std::size_t>(j)].lhs;
          Word a = ri;
          a.insert(a.end(), lj.begin() + static_cast<long>(k), lj.end());
          Word b(li.begin(), li.end() - static_cast<long>(k));
          const Word& rj = rules_[static_cast<std::size_t>(j)].rhs;
          b.insert(b.end(), rj.begin(), rj.end());
          Word ra = reduce(std::move(a));
          Word rb = reduce(std::move(b));
          if (ra == rb) continue;
          const Word& lhs = shortlex_compare(ra, rb) == Cmp::Greater ? ra : rb;
          if (lhs.size() > current_cap_) {
            need_longer = true;
          } else {
            equations_.emplace_back(std::move(ra), std::move(rb));
            found = true;
          }
        }
      }
    }
    if (found) return SweepOutcome::FoundWork;
    return need_longer ? SweepOutcome::NeedLongerRules : SweepOutcome::Clean;
  }

  std::vector<RewriteRule> finish(RewriteStatus* status, std::size_t* bound) {
    std::vector<RewriteRule> out;
    if (confluent_) {
      for (auto& r : rules_) {
        if (r.active) out.push_back({std::move(r.lhs), std::move(r.rhs)});
      }
      *status = RewriteStatus::Confluent;
      *bound = 0;
    } else if (!best_rules_.empty()) {
      // Prefer the last certified fixpoint over whatever half-processed
      // state a budget stop left behind.
      out = std::move(best_rules_);
      *status = RewriteStatus::BudgetExceeded;
      *bound = best_bound_;
    } else {
      for (auto& r : rules_) {
        if (r.active) out.push_back({std::move(r.lhs), std::move(r.rhs)});
      }
      *status = RewriteStatus::BudgetExceeded;
      *bound = 0;
    }
    std::sort(out.begin(), out.end(), [](const RewriteRule& a, const RewriteRule& b) {
      Cmp c = shortlex_compare(a.lhs, b.lhs);
      if (c != Cmp::Equal) return c == Cmp::Less;
      return shortlex_compare(a.rhs, b.rhs) == Cmp::Less;
    });
    return out;
  }

 private:
  void take_snapshot(std::size_t bound) {
    best_rules_.clear();
    for (const auto& r : rules_) {
      if (r.active) best_rules_.push_back({r.lhs, r.rhs});
    }
    best_bound_ = bound;
  }

  Word reduce(Word w) {
    maybe_rebuild();
    auto in_index = [&](int r) {
      return rules_[static_cast<std::size_t>(r)].active &&
             static_cast<std::size_t>(r) < indexed_upto_;
    };
    auto in_small = [&](int r) { return rules_[static_cast<std::size_t>(r)].active; };
    for (;;) {
      Word a = index_.reduce(w, rules_, in_index);
      Word b = unindexed_.empty() ? std::move(a) : small_.reduce(a, rules_, in_small);
      if (b == w) return b;
      w = std::move(b);
    }
  }

  void maybe_rebuild() {
    if (interreducing_) return;
    if (unindexed_.size() <= rebuild_threshold_ && indexed_upto_ > 0) return;
    rebuild();
  }

  void rebuild() {
    if (indexed_upto_ > 0) interreduce();
    std::vector<Word> lhss;
    std::vector<int> ids;
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].active) {
        lhss.push_back(rules_[r].lhs);
        ids.push_back(static_cast<int>(r));
      }
    }
    index_.build(L_, lhss, ids);
    indexed_upto_ = rules_.size();
    unindexed_.clear();
    small_ = RuleIndex{};
    rebuild_threshold_ = std::max<std::size_t>(24, rules_.size() / 16);
    by_prefix_.clear();
    by_suffix_.clear();
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (!rules_[r].active) continue;
      by_prefix_.emplace_back(rules_[r].lhs, static_cast<int>(r));
      Word rev = rules_[r].lhs;
      std::reverse(rev.begin(), rev.end());
      by_suffix_.emplace_back(std::move(rev), static_cast<int>(r));
    }
    std::sort(by_prefix_.begin(), by_prefix_.end());
    std::sort(by_suffix_.begin(), by_suffix_.end());
    overlap_pending_.clear();
  }

  void process_equations() {
    std::size_t since_deadline_check = 0;
    while (!equations_.empty()) {
      if (++since_deadline_check >= 256) {
        since_deadline_check = 0;
        if (std::chrono::steady_clock::now() > opts_.deadline) {
          budget_exceeded_ = true;
          equations_.clear();
          break;
        }
      }
      auto [u, v] = std::move(equations_.front());
      equations_.pop_front();
      u = reduce(std::move(u));
      v = reduce(std::move(v));
      Cmp c = shortlex_compare(u, v);
      if (c == Cmp::Equal) continue;
      Word lhs = c == Cmp::Greater ? std::move(u) : std::move(v);
      Word rhs = c == Cmp::Greater ? std::move(v) : std::move(u);
      if (active_count_ >= opts_.max_rules) {
        budget_exceeded_ = true;
        continue;
      }
      if (lhs.size() > current_cap_) continue;
      insert_rule(std::move(lhs), std::move(rhs));
    }
  }

  void insert_rule(Word lhs, Word rhs) {
    int id = static_cast<int>(rules_.size());
    std::size_t len = lhs.size();
    rules_.push_back({std::move(lhs), std::move(rhs), true});
    ++active_count_;
    unindexed_.push_back(id);
    overlap_pending_.push_back(id);
    rebuild_small();
    expand_.push({len, id});
  }

  void rebuild_small() {
    std::vector<Word> lhss;
    std::vector<int> ids;
    for (int r : unindexed_) {
      if (rules_[static_cast<std::size_t>(r)].active) {
        lhss.push_back(rules_[static_cast<std::size_t>(r)].lhs);
        ids.push_back(r);
      }
    }
    small_.build(L_, lhss, ids);
  }

  // Deactivate every rule whose lhs became reducible by newer rules and
  // requeue it as an equation; renormalize surviving right-hand sides.
  // Runs in batches (at index rebuild) rather than per insertion.
  void interreduce() {
    if (interreducing_) return;
    interreducing_ = true;
    for (std::size_t t = 0; t < rules_.size(); ++t) {
      auto& rt = rules_[t];
      if (!rt.active) continue;
      int self = static_cast<int>(t);
      Word l = index_.reduce(rt.lhs, rules_, [&](int r) {
        return r != self && rules_[static_cast<std::size_t>(r)].active &&
               static_cast<std::size_t>(r) < indexed_upto_;
      });
      if (l == rt.lhs && !unindexed_.empty()) {
        l = small_.reduce(rt.lhs, rules_, [&](int r) {
          return r != self && rules_[static_cast<std::size_t>(r)].active;
        });
      }
      if (l != rt.lhs) {
        rt.active = false;
        --active_count_;
        equations_.emplace_back(rt.lhs, rt.rhs);
      } else {
        rt.rhs = reduce(rt.rhs);
      }
    }
    interreducing_ = false;
  }

  // Queue the critical-pair equations of rule i against every rule
  // active now, found through the sorted prefix/suffix arrays instead of
  // a scan over the whole rule set.  Rules inserted since the last
  // rebuild are not in the arrays yet and are handled pairwise.
  void expand_rule(int i) {
    const Word li = rules_[static_cast<std::size_t>(i)].lhs;
    const Word ri = rules_[static_cast<std::size_t>(i)].rhs;
    for (std::size_t k = 1; k < li.size(); ++k) {
      // suffix of lhs_i = prefix of lhs_j
      Word s(li.end() - static_cast<long>(k), li.end());
      for_each_prefix_match(by_prefix_, s, [&](const Word& lj, int j) {
        if (!rules_[static_cast<std::size_t>(j)].active || lj.size() <= k) return;
        Word a = ri;
        a.insert(a.end(), lj.begin() + static_cast<long>(k), lj.end());
        Word b(li.begin(), li.end() - static_cast<long>(k));
        const Word& rj = rules_[static_cast<std::size_t>(j)].rhs;
        b.insert(b.end(), rj.begin(), rj.end());
        equations_.emplace_back(std::move(a), std::move(b));
      });
      // suffix of lhs_j = prefix of lhs_i
      Word t(li.begin(), li.begin() + static_cast<long>(k));
      std::reverse(t.begin(), t.end());
      for_each_prefix_match(by_suffix_, t, [&](const Word& lj_rev, int j) {
        if (!rules_[static_cast<std::size_t>(j)].active || lj_rev.size() <= k) return;
        const Word& lj = rules_[static_cast<std::size_t>(j)].lhs;
        const Word& rj = rules_[static_cast<std::size_t>(j)].rhs;
        Word a = rj;
        a.insert(a.end(), li.begin() + static_cast<long>(k), li.end());
        Word b(lj.begin(), lj.end() - static_cast<long>(k));
        b.insert(b.end(), ri.begin(), ri.end());
        equations_.emplace_back(std::move(a), std::move(b));
      });
    }
    for (int j : overlap_pending_) {
      if (!rules_[static_cast<std::size_t>(j)].active) continue;
      overlap(i, j);
      if (j != i) overlap(j, i);
    }
  }

  template <typename F>
  static void for_each_prefix_match(const std::vector<std::pair<Word, int>>& arr, const Word& s,
                                    F&& f) {
    auto it = std::lower_bound(arr.begin(), arr.end(), s,
                               [](const std::pair<Word, int>& e, const Word& key) {
                                 return std::lexicographical_compare(e.first.begin(),
                                                                     e.first.end(), key.begin(),
                                                                     key.end());
                               });
    for (; it != arr.end(); ++it) {
      if (it->first.size() < s.size() ||
          !std::equal(s.begin(), s.end(), it->first.begin())) {
        break;
      }
      f(it->first, it->second);
    }
  }

  void overlap(int i, int j) {
    const Word& li = rules_[static_cast<std::size_t>(i)].lhs;
    const Word& lj = rules_[static_cast<std::size_t>(j)].lhs;
    std::size_t kmax = std::min(li.size(), lj.size()) - 1;
    for (std::size_t k = 1; k <= kmax; ++k) {
      if (!std::equal(li.end() - static_cast<long>(k), li.end(), lj.begin())) continue;
      Word a = rules_[static_cast<std::size_t>(i)].rhs;
      a.insert(a.end(), lj.begin() + static_cast<long>(k), lj.end());
      Word b(li.begin(), li.end() - static_cast<long>(k));
      const Word& rj = rules_[static_cast<std::size_t>(j)].rhs;
      b.insert(b.end(), rj.begin(), rj.end());
      equations_.emplace_back(std::move(a), std::move(b));
    }
  }

  int L_;
  KbOptions opts_;
  std::vector<WorkRule> rules_;
  std::size_t active_count_ = 0;
  std::deque<std::pair<Word, Word>> equations_;
  std::size_t current_cap_ = 12;  // adaptive lhs length cap, <= opts_.max_lhs_length
  std::size_t rebuild_threshold_ = 24;
  bool interreducing_ = false;
  struct ExpandEntry {
    std::size_t len;
    int id;
    bool operator>(const ExpandEntry& o) const {
      return len != o.len ? len > o.len : id > o.id;
    }
  };
  std::priority_queue<ExpandEntry, std::vector<ExpandEntry>, std::greater<>> expand_;
  RuleIndex index_;
  RuleIndex small_;  // recent rules not yet merged into index_
  // Sorted (lhs, id) and (reversed lhs, id) over active rules at the
  // last rebuild, for overlap candidate range queries.
  std::vector<std::pair<Word, int>> by_prefix_;
  std::vector<std::pair<Word, int>> by_suffix_;
  std::vector<int> overlap_pending_;  // inserted since the last rebuild
  std::size_t indexed_upto_ = 0;
  std::vector<int> unindexed_;
  bool budget_exceeded_ = false;
  bool confluent_ = false;
  std::vector<RewriteRule> best_rules_;  // last certified cap fixpoint
  std::size_t best_bound_ = 0;
};

}  // namespace

struct RewritingSystemIndex;

RewritingSystem::RewritingSystem(int num_letters, std::vector<RewriteRule> rules,
                                 RewriteStatus status, std::size_t confluence_bound)
    : num_letters_(num_letters),
      rules_(std::move(rules)),
      status_(status),
      confluence_bound_(status == RewriteStatus::Confluent ? SIZE_MAX : confluence_bound) {
  build_index();
}

void RewritingSystem::build_index() {
  RuleIndex idx;
  std::vector<Word> lhss;
  std::vector<int> ids;
  for (std::size_t r = 0; r < rules_.size(); ++r) {
    lhss.push_back(rules_[r].lhs);
    ids.push_back(static_cast<int>(r));
  }
  idx.build(num_letters_, lhss, ids);
  delta_ = std::move(idx.delta);
  match_.assign(idx.matchlink.size(), -1);
  for (std::size_t s = 0; s < idx.matchlink.size(); ++s) {
    if (idx.matchlink[s] >= 0) {
      match_[s] = idx.terminal[static_cast<std::size_t>(idx.matchlink[s])];
    }
  }
}

std::size_t RewritingSystem::max_rule_length() const {
  std::size_t m = 0;
  for (const auto& r : rules_) m = std::max(m, r.lhs.size());
  return m;
}

Word RewritingSystem::reduce(const Word& w) const {
  Word out;
  out.reserve(w.size());
  std::vector<int> states{0};
  states.reserve(w.size() + 1);
  Word todo(w.rbegin(), w.rend());
  while (!todo.empty()) {
    Letter x = todo.back();
    todo.pop_back();
    int s = delta_[static_cast<std::size_t>(states.back()) * num_letters_ + x.code];
    int r = match_[static_cast<std::size_t>(s)];
    if (r < 0) {
      out.push_back(x);
      states.push_back(s);
    } else {
      std::size_t k = rules_[static_cast<std::size_t>(r)].lhs.size() - 1;
      out.resize(out.size() - k);
      states.resize(out.size() + 1);
      const Word& rhs = rules_[static_cast<std::size_t>(r)].rhs;
      todo.insert(todo.end(), rhs.rbegin(), rhs.rend());
    }
  }
  return out;
}

bool RewritingSystem::word_equal(const Word& u, const Word& v) const {
  if (!confluent()) {
    throw NotConfluentError("word_equal requires a confluent rewriting system");
  }
  return reduce(u) == reduce(v);
}

std::string RewritingSystem::serialize(const Presentation& p) const {
  std::ostringstream out;
  out << "letters: " << p.letter_order() << "\n";
  out << "status: " << (confluent() ? "confluent" : "budget-exceeded") << "\n";
  if (!confluent() && confluence_bound_ > 0) {
    out << "confluent-up-to: " << confluence_bound_ << "\n";
  }
  out << "rules: " << rules_.size() << "\n";
  for (const auto& r : rules_) {
    out << p.render_word(r.lhs) << " -> " << p.render_word(r.rhs) << "\n";
  }
  return out.str();
}

RewritingSystem RewritingSystem::deserialize(const std::string& text, const Presentation& p) {
  std::istringstream in(text);
  std::string line;
  RewriteStatus status = RewriteStatus::BudgetExceeded;
  std::size_t bound = 0;
  std::vector<RewriteRule> rules;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("letters: ", 0) == 0) {
      if (line.substr(9) != p.letter_order()) {
        throw ParseError("letter order mismatch", lineno, 1);
      }
    } else if (line.rfind("status: ", 0) == 0) {
      status = line.substr(8) == "confluent" ? RewriteStatus::Confluent
                                             : RewriteStatus::BudgetExceeded;
    } else if (line.rfind("confluent-up-to: ", 0) == 0) {
      bound = static_cast<std::size_t>(std::stoull(line.substr(17)));
    } else if (line.rfind("rules: ", 0) == 0) {
      // count line, informational
    } else {
      auto arrow = line.find(" -> ");
      if (arrow == std::string::npos) throw ParseError("expected 'lhs -> rhs'", lineno, 1);
      Word lhs = p.parse_word(line.substr(0, arrow));
      Word rhs = p.parse_word(line.substr(arrow + 4));
      if (shortlex_compare(lhs, rhs) != Cmp::Greater) {
        throw ParseError("rule not shortlex-decreasing", lineno, 1);
      }
      rules.push_back({std::move(lhs), std::move(rhs)});
    }
  }
  return RewritingSystem(p.num_letters(), std::move(rules), status, bound);
}

RewritingSystem knuth_bendix(const Presentation& p, const KbOptions& opts) {
  Completion comp(p.num_letters(), opts);
  for (int g = 0; g < p.num_generators(); ++g) {
    Letter x = Letter::make(g, false);
    comp.add_equation({x, x.inverse()}, {});
    comp.add_equation({x.inverse(), x}, {});
  }
  for (const auto& r : p.relators) {
    // Seed r = 1 in the balanced form  r[0:h] = (r[h:])^-1  so that seed
    // equations (and with them the initial length cap) stay close to
    // half the relator length.
    std::size_t h = (r.size() + 1) / 2;
    Word u(r.begin(), r.begin() + static_cast<long>(h));
    Word v = invert(Word(r.begin() + static_cast<long>(h), r.end()));
    comp.add_equation(std::move(u), std::move(v));
  }
  comp.run();
  RewriteStatus status;
  std::size_t bound = 0;
  auto rules = comp.finish(&status, &bound);
  return RewritingSystem(p.num_letters(), std::move(rules), status, bound);
}

std::vector<std::pair<Word, Word>> unresolved_critical_pairs(const RewritingSystem& sys) {
  std::vector<std::pair<Word, Word>> bad;
  const auto& rules = sys.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& li = rules[i].lhs;
      const Word& lj = rules[j].lhs;
      // proper overlaps: suffix of li == prefix of lj
      std::size_t kmax = std::min(li.size(), lj.size());
      for (std::size_t k = 1; k <= kmax; ++k) {
        if (k == li.size() && k == lj.size()) continue;  // identical factor == same rule
        if (!std::equal(li.end() - static_cast<long>(k), li.end(), lj.begin())) continue;
        Word a = rules[i].rhs;
        a.insert(a.end(), lj.begin() + static_cast<long>(k), lj.end());
        Word b(li.begin(), li.end() - static_cast<long>(k));
        b.insert(b.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        if (sys.reduce(a) != sys.reduce(b)) bad.emplace_back(std::move(a), std::move(b));
      }
    }
  }
  return bad;
}

std::size_t certified_confluence_bound(const RewritingSystem& sys) {
  std::size_t shortest_bad = SIZE_MAX;
  const auto& rules = sys.rules();
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = 0; j < rules.size(); ++j) {
      const Word& li = rules[i].lhs;
      const Word& lj = rules[j].lhs;
      std::size_t kmax = std::min(li.size(), lj.size());
      for (std::size_t k = 1; k <= kmax; ++k) {
        if (k == li.size() && k == lj.size()) continue;
        std::size_t overlap_len = li.size() + lj.size() - k;
        if (overlap_len > shortest_bad) continue;
        if (!std::equal(li.end() - static_cast<long>(k), li.end(), lj.begin())) continue;
        Word a = rules[i].rhs;
        a.insert(a.end(), lj.begin() + static_cast<long>(k), lj.end());
        Word b(li.begin(), li.end() - static_cast<long>(k));
        b.insert(b.end(), rules[j].rhs.begin(), rules[j].rhs.end());
        if (sys.reduce(a) != sys.reduce(b)) shortest_bad = overlap_len;
      }
    }
  }
  return shortest_bad == SIZE_MAX ? SIZE_MAX : shortest_bad - 1;
}

}  // namespace lorder
