#include "lorder/order.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>

namespace lorder {

using nlohmann::json;

int count_leaves(const CertNode* n) {
  if (n == nullptr) return 0;
  if (n->is_leaf) return 1;
  return count_leaves(n->positive.get()) + count_leaves(n->negative.get());
}

int Certificate::leaf_count() const { return count_leaves(root.get()); }

namespace {

json node_to_json(const CertNode& n, const Presentation& p) {
  json j;
  if (n.is_leaf) {
    json steps = json::array();
    for (const auto& s : n.steps) {
      steps.push_back({p.render_word(s.x), p.render_word(s.y), p.render_word(s.product)});
    }
    j["steps"] = std::move(steps);
  } else {
    j["branch"] = p.render_word(n.branch);
    j["positive"] = node_to_json(*n.positive, p);
    j["negative"] = node_to_json(*n.negative, p);
  }
  return j;
}

std::unique_ptr<CertNode> node_from_json(const json& j, const Presentation& p) {
  auto n = std::make_unique<CertNode>();
  if (j.contains("steps")) {
    n->is_leaf = true;
    for (const auto& s : j.at("steps")) {
      n->steps.push_back({p.parse_word(s.at(0).get<std::string>()),
                          p.parse_word(s.at(1).get<std::string>()),
                          p.parse_word(s.at(2).get<std::string>())});
    }
  } else {
    n->branch = p.parse_word(j.at("branch").get<std::string>());
    n->positive = node_from_json(j.at("positive"), p);
    n->negative = node_from_json(j.at("negative"), p);
  }
  return n;
}

}  // namespace

json Certificate::to_json(const Presentation& p) const {
  json j;
  j["format"] = "cone-certificate-v1";
  j["presentation"] = presentation_text;
  j["presentation_hash"] = presentation_hash;
  j["letter_order"] = letter_order;
  j["radius"] = radius;
  j["confluent_up_to"] = confluence_bound;  // 0: fully confluent system
  json seeds = json::array();
  for (const auto& w : seed) seeds.push_back(p.render_word(w));
  j["seed"] = std::move(seeds);
  j["tree"] = node_to_json(*root, p);
  return j;
}

Certificate Certificate::from_json(const json& j, const Presentation& p) {
  Certificate c;
  c.presentation_text = j.at("presentation").get<std::string>();
  c.presentation_hash = j.at("presentation_hash").get<std::string>();
  c.letter_order = j.at("letter_order").get<std::string>();
  c.radius = j.at("radius").get<int>();
  c.confluence_bound = j.value("confluent_up_to", std::size_t{0});
  for (const auto& s : j.at("seed")) c.seed.push_back(p.parse_word(s.get<std::string>()));
  c.root = node_from_json(j.at("tree"), p);
  return c;
}

OrderVerdict OrderVerdict::not_left_orderable(int radius, Certificate cert) {
  OrderVerdict v{VerdictKind::NotLeftOrderable, radius, nullptr, {}, InconclusiveReason::None};
  v.certificate = std::make_shared<Certificate>(std::move(cert));
  return v;
}

OrderVerdict OrderVerdict::consistent(int radius, std::vector<Word> witness) {
  return {VerdictKind::ConsistentAtRadius, radius, nullptr, std::move(witness),
          InconclusiveReason::None};
}

OrderVerdict OrderVerdict::inconclusive(int radius, InconclusiveReason reason) {
  return {VerdictKind::Inconclusive, radius, nullptr, {}, reason};
}

std::string OrderVerdict::kind_string() const {
  switch (kind) {
    case VerdictKind::NotLeftOrderable:
      return "NOT_LEFT_ORDERABLE";
    case VerdictKind::ConsistentAtRadius:
      return "CONSISTENT";
    case VerdictKind::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

namespace {

struct Deriv {
  int x = -1;
  int y = -1;
  bool assumption() const { return x < 0; }
};

// Elements the search can talk about.  Ball representatives keep their
// ids; normal forms longer than the radius but at most twice the radius
// (products of two ball members) get fresh ids on demand.  Deducing
// signs for those derived elements lets a contradiction wrap through
// relations up to four times the radius without enumerating a larger
// ball — essential for groups whose shortest relator is long.
struct ElementRegistry {
  const Ball& ball;
  const RewritingSystem& sys;
  std::size_t ext_limit;  // 2 * radius
  std::size_t word_cap;
  std::size_t memo_cap;
  std::vector<Word> ext_words;
  std::unordered_map<Word, int, WordHash> ext_index;
  std::vector<int> inv_cache;  // per ext word; -2 = not yet computed
  std::unordered_map<std::uint64_t, int> memo;

  ElementRegistry(const Ball& b, const ConeSearchOptions& o)
      : ball(b),
        sys(b.system()),
        ext_limit(std::min(2 * static_cast<std::size_t>(b.radius()),
                           o.ext_length_limit ? o.ext_length_limit
                                              : 2 * static_cast<std::size_t>(b.radius()))),
        word_cap(o.ext_word_cap),
        memo_cap(o.product_memo_cap) {}

  std::size_t size() const { return ball.size() + ext_words.size(); }
  bool in_ball(int id) const { return id < static_cast<int>(ball.size()); }
  const Word& word(int id) const {
    return in_ball(id) ? ball.rep(id)
                       : ext_words[static_cast<std::size_t>(id) - ball.size()];
  }

  int id_of(const Word& nf) {  // nf.size() <= ext_limit
    if (nf.size() <= static_cast<std::size_t>(ball.radius())) return ball.find(nf);
    auto it = ext_index.find(nf);
    if (it != ext_index.end()) return it->second;
    if (ext_words.size() >= word_cap) {
      throw ResourceExceeded("derived-element registry exceeds configured cap");
    }
    int id = static_cast<int>(size());
    ext_index.emplace(nf, id);
    ext_words.push_back(nf);
    return id;
  }

  int inv(int id) {
    if (in_ball(id)) return ball.inv(id);
    std::size_t k = static_cast<std::size_t>(id) - ball.size();
    if (k >= inv_cache.size()) inv_cache.resize(ext_words.size(), -2);
    if (inv_cache[k] == -2) inv_cache[k] = id_of(sys.reduce(invert(ext_words[k])));
    return inv_cache[k];
  }

  // Product of two ball members; kOutOfBall when the normal form is
  // longer than 2 * radius.
  int mul(int i, int j) {
    if (ball.has_full_table()) {
      int k = ball.mul(i, j);
      if (k != kOutOfBall) return k;
    }
    std::uint64_t key = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(i)) << 32) |
                        static_cast<std::uint32_t>(j);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    Word prod = sys.reduce(concat(ball.rep(i), ball.rep(j)));
    int id = prod.size() <= ext_limit ? id_of(prod) : kOutOfBall;
    if (memo.size() >= memo_cap) throw ResourceExceeded("product memo exceeds configured cap");
    memo.emplace(key, id);
    return id;
  }
};

struct ConeState {
  std::vector<std::uint64_t> bits;    // membership over all registry ids
  std::vector<int> members;           // every member, insertion order
  std::vector<Deriv> derivs;          // parallel to members
  std::vector<int> ball_members;      // the subset products are formed from
  std::size_t unsaturated = 0;        // index into ball_members

  bool member(int id) const {
    std::size_t w = static_cast<std::size_t>(id) >> 6;
    return w < bits.size() && ((bits[w] >> (id & 63)) & 1);
  }
  void add(int id, Deriv d, bool in_ball) {
    std::size_t w = static_cast<std::size_t>(id) >> 6;
    if (w >= bits.size()) bits.resize(w + 1, 0);
    bits[w] |= 1ull << (id & 63);
    members.push_back(id);
    derivs.push_back(d);
    if (in_ball) ball_members.push_back(id);
  }
};

struct Searcher {
  const Ball& ball;
  const Presentation& p;
  ConeSearchOptions opts;
  ElementRegistry reg;
  bool deadline_hit = false;

  Searcher(const Ball& b, const Presentation& pres, const ConeSearchOptions& o)
      : ball(b), p(pres), opts(o), reg(b, o) {}

  enum class Kind { Failed, Consistent, Capped };
  struct Outcome {
    Kind kind;
    std::unique_ptr<CertNode> node;
    std::vector<int> witness;
  };

  // The final step of a contradiction chain: word(a) * word(b) rewrites
  // to the empty word.
  struct Contra {
    int a;
    int b;
  };

  // Add id to the cone; if its inverse is already a member and the
  // resulting identity is certifiable by rewriting, report it.
  std::optional<Contra> add_checked(ConeState& s, int id, Deriv d) {
    s.add(id, d, reg.in_ball(id));
    int iv = reg.inv(id);
    if (iv >= 0 && s.member(iv)) {
      if (reg.sys.reduce(concat(reg.word(id), reg.word(iv))).empty()) return Contra{id, iv};
      if (reg.sys.reduce(concat(reg.word(iv), reg.word(id))).empty()) return Contra{iv, id};
    }
    return std::nullopt;
  }

  // Closure of the ball members under products, tracking derived
  // elements up to length 2 * radius; reports the first certifiable
  // contradiction, if any.
  std::optional<Contra> saturate(ConeState& s) {
    while (s.unsaturated < s.ball_members.size()) {
      int u = s.ball_members[s.unsaturated++];
      std::size_t snapshot = s.ball_members.size();
      for (std::size_t idx = 0; idx < snapshot; ++idx) {
        int v = s.ball_members[idx];
        int uv = reg.mul(u, v);
        if (uv == 0) return Contra{u, v};
        if (uv != kOutOfBall && !s.member(uv)) {
          if (auto c = add_checked(s, uv, {u, v})) return c;
        }
        if (u != v) {
          int vu = reg.mul(v, u);
          if (vu == 0) return Contra{v, u};
          if (vu != kOutOfBall && !s.member(vu)) {
            if (auto c = add_checked(s, vu, {v, u})) return c;
          }
        }
      }
    }
    return std::nullopt;
  }

  std::unique_ptr<CertNode> contradiction_leaf(const ConeState& s, Contra c) const {
    std::unordered_map<int, Deriv> deriv_of;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      deriv_of.emplace(s.members[i], s.derivs[i]);
    }
    std::set<int> needed;
    std::vector<int> stack{c.a, c.b};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      const Deriv& d = deriv_of.at(id);
      if (d.assumption() || !needed.insert(id).second) continue;
      stack.push_back(d.x);
      stack.push_back(d.y);
    }
    auto leaf = std::make_unique<CertNode>();
    leaf->is_leaf = true;
    for (std::size_t i = 0; i < s.members.size(); ++i) {
      int id = s.members[i];
      if (!needed.contains(id)) continue;
      const Deriv& d = s.derivs[i];
      if (d.assumption()) continue;
      leaf->steps.push_back({reg.word(d.x), reg.word(d.y), reg.word(id)});
    }
    leaf->steps.push_back({reg.word(c.a), reg.word(c.b), Word{}});
    return leaf;
  }

  // A sign deduced by failed-literal propagation: assuming `branch`
  // positive contradicted (the leaf), so its inverse was forced.
  struct Forced {
    Word branch;
    std::unique_ptr<CertNode> failed;
  };

  Outcome search(ConeState state, int depth) {
    if (auto contra = saturate(state)) {
      return {Kind::Failed, contradiction_leaf(state, *contra), {}};
    }
    // Failed-literal propagation.  Forced signs are deductions, not
    // choices, so they cost no depth; each becomes a one-sided branch
    // node in the certificate if the whole cone later fails.
    std::vector<Forced> forced;
    auto wrap = [&](std::unique_ptr<CertNode> node) {
      for (auto it = forced.rbegin(); it != forced.rend(); ++it) {
        auto n = std::make_unique<CertNode>();
        n->branch = std::move(it->branch);
        n->positive = std::move(it->failed);
        n->negative = std::move(node);
        node = std::move(n);
      }
      return node;
    };
    bool progress = true;
    while (progress) {
      progress = false;
      int seen = 0;
      for (int id = 1;
           id < static_cast<int>(ball.size()) && seen < opts.lookahead_window && !progress;
           ++id) {
        if (state.member(id) || state.member(ball.inv(id))) continue;
        ++seen;
        if (std::chrono::steady_clock::now() > opts.deadline) {
          deadline_hit = true;
          return {Kind::Capped, nullptr, {}};
        }
        for (int cand : {id, ball.inv(id)}) {
          ConeState trial = state;
          trial.add(cand, {}, true);
          auto c = saturate(trial);
          if (!c) continue;
          forced.push_back({reg.word(cand), contradiction_leaf(trial, *c)});
          state.add(ball.inv(cand), {}, true);
          if (auto c2 = saturate(state)) {
            auto node = std::make_unique<CertNode>();
            node->branch = std::move(forced.back().branch);
            node->positive = std::move(forced.back().failed);
            node->negative = contradiction_leaf(state, *c2);
            forced.pop_back();
            return {Kind::Failed, wrap(std::move(node)), {}};
          }
          progress = true;
          break;
        }
      }
    }
    int undecided = -1;
    for (int id = 1; id < static_cast<int>(ball.size()); ++id) {
      if (!state.member(id) && !state.member(ball.inv(id))) {
        undecided = id;
        break;
      }
    }
    if (undecided < 0) {
      return {Kind::Consistent, nullptr, state.ball_members};
    }
    if (depth >= opts.depth_cap) return {Kind::Capped, nullptr, {}};
    if (std::chrono::steady_clock::now() > opts.deadline) {
      deadline_hit = true;
      return {Kind::Capped, nullptr, {}};
    }
    ConeState pos_state = state;
    pos_state.add(undecided, {}, true);
    Outcome pos = search(std::move(pos_state), depth + 1);
    if (pos.kind == Kind::Consistent) return pos;

    ConeState neg_state = std::move(state);
    neg_state.add(ball.inv(undecided), {}, true);
    Outcome neg = search(std::move(neg_state), depth + 1);
    if (neg.kind == Kind::Consistent) return neg;

    if (pos.kind == Kind::Failed && neg.kind == Kind::Failed) {
      auto node = std::make_unique<CertNode>();
      node->branch = ball.rep(undecided);
      node->positive = std::move(pos.node);
      node->negative = std::move(neg.node);
      return {Kind::Failed, wrap(std::move(node)), {}};
    }
    return {Kind::Capped, nullptr, {}};
  }
};

}  // namespace

OrderVerdict construct_positive_cone(const Ball& ball, const Presentation& p,
                                     const std::vector<Word>& seed,
                                     const ConeSearchOptions& opts) {
  const RewritingSystem& sys = ball.system();
  ConeState state;
  std::vector<Word> seed_nf;
  for (const auto& w : seed) {
    Word nf = sys.reduce(w);
    if (nf.empty()) continue;  // a trivial seed element carries no sign information
    int id = ball.find(nf);
    if (id < 0) throw std::invalid_argument("seed element lies outside the ball");
    if (!state.member(id)) {
      state.add(id, {}, true);
      seed_nf.push_back(std::move(nf));
    }
  }
  Searcher searcher(ball, p, opts);
  Searcher::Outcome out = searcher.search(std::move(state), 0);
  OrderVerdict verdict = [&]() -> OrderVerdict {
    switch (out.kind) {
    case Searcher::Kind::Failed: {
      Certificate cert;
      cert.presentation_text = p.render();
      cert.presentation_hash = p.hash_hex();
      cert.letter_order = p.letter_order();
      cert.radius = ball.radius();
      cert.confluence_bound = sys.confluent() ? 0 : sys.confluence_bound();
      cert.seed = std::move(seed_nf);
      cert.root = std::move(out.node);
      return OrderVerdict::not_left_orderable(ball.radius(), std::move(cert));
    }
    case Searcher::Kind::Consistent: {
      std::vector<int> ids = std::move(out.witness);
      std::sort(ids.begin(), ids.end());
      std::vector<Word> witness;
      witness.reserve(ids.size());
      for (int id : ids) witness.push_back(ball.rep(id));
      return OrderVerdict::consistent(ball.radius(), std::move(witness));
    }
    case Searcher::Kind::Capped:
      return OrderVerdict::inconclusive(ball.radius(),
                                        searcher.deadline_hit
                                            ? InconclusiveReason::BudgetExceeded
                                            : InconclusiveReason::DepthCap);
    }
    throw std::logic_error("unreachable");
  }();
  verdict.confluence_bound = sys.confluent() ? 0 : sys.confluence_bound();
  return verdict;
}

OrderVerdict test_left_orderability(const Presentation& p, const CheckOptions& opts) {
  // Completion is done lazily, per radius: radius r needs normal forms
  // exact on words of length <= 2r, and a refutation at a small radius
  // should not pay for the (possibly much deeper) completion a later
  // radius would need.  A fully confluent system serves every radius.
  std::optional<RewritingSystem> sys;
  std::optional<RewritingSystem> deeper;
  auto ensure_system = [&](std::size_t needed) {
    if (sys && sys->confluent_up_to(needed)) return;
    KbOptions kb = opts.kb;
    kb.deadline = std::min(kb.deadline, opts.deadline);
    if (!opts.require_confluent && kb.target_confluence == 0) {
      kb.target_confluence = needed;
    }
    sys = knuth_bendix(p, kb);
    if (opts.require_confluent && !sys->confluent()) {
      throw NotConfluentError("completion did not reach confluence within budget");
    }
    if (!sys->confluent_up_to(needed)) {
      throw NotConfluentError(
          "completion certified no confluence bound covering the requested radius");
    }
    // With a bounded system, complete one cap deeper and make sure no ball
    // representative collapses there: a cheap falsification check for the
    // premise that representatives are distinct, nontrivial group elements.
    deeper.reset();
    if (!sys->confluent()) {
      KbOptions kb2 = kb;
      kb2.target_confluence = sys->confluence_bound() + 2;
      kb2.max_lhs_length = std::max(kb2.max_lhs_length, kb2.target_confluence);
      deeper = knuth_bendix(p, kb2);
    }
  };
  std::vector<Word> seed;
  if (opts.seed_first_generator && p.num_generators() > 0) {
    seed.push_back({Letter::make(0, false)});
  }
  OrderVerdict last = OrderVerdict::inconclusive(0, InconclusiveReason::BudgetExceeded);
  for (int r : opts.radii) {
    ensure_system(2 * static_cast<std::size_t>(r));
    Ball ball;
    try {
      ball = build_ball(*sys, r, opts.ball);
    } catch (const ResourceExceeded&) {
      return OrderVerdict::inconclusive(r, InconclusiveReason::BudgetExceeded);
    }
    if (deeper) {
      for (const Word& rep : ball.reps()) {
        if (deeper->reduce(rep) != rep) {
          return OrderVerdict::inconclusive(r, InconclusiveReason::StabilityCheckFailed);
        }
      }
    }
    ConeSearchOptions cone{opts.depth_cap, opts.deadline};
    OrderVerdict v = OrderVerdict::inconclusive(r, InconclusiveReason::BudgetExceeded);
    try {
      v = construct_positive_cone(ball, p, seed, cone);
    } catch (const ResourceExceeded&) {
      // The lazy product memo outgrew its cap: report rather than thrash.
      return OrderVerdict::inconclusive(r, InconclusiveReason::BudgetExceeded);
    }
    if (v.kind == VerdictKind::NotLeftOrderable) return v;
    last = std::move(v);
    if (last.kind == VerdictKind::Inconclusive &&
        last.reason == InconclusiveReason::BudgetExceeded) {
      break;  // deadline passed, later radii will not help
    }
  }
  return last;
}

CertCheckResult check_certificate(const Certificate& cert, const Presentation& p,
                                  const KbOptions& kb) {
  auto fail = [](std::string msg) { return CertCheckResult{false, std::move(msg)}; };
  if (cert.presentation_hash != p.hash_hex()) return fail("presentation hash mismatch");
  if (cert.letter_order != p.letter_order()) return fail("letter order mismatch");
  if (!cert.root) return fail("certificate has no decision tree");
  KbOptions kb2 = kb;
  if (cert.confluence_bound != 0) {
    if (cert.confluence_bound < 2 * static_cast<std::size_t>(cert.radius)) {
      return fail("certificate's confluence bound does not cover twice its radius");
    }
    if (kb2.target_confluence == 0) kb2.target_confluence = cert.confluence_bound;
    kb2.max_lhs_length = std::max(kb2.max_lhs_length, kb2.target_confluence);
  }
  RewritingSystem sys = knuth_bendix(p, kb2);
  if (cert.confluence_bound == 0) {
    if (!sys.confluent()) {
      throw NotConfluentError("cannot validate certificate: completion not confluent");
    }
  } else if (!sys.confluent_up_to(cert.confluence_bound)) {
    return fail("could not re-certify the certificate's confluence bound");
  }
  // For a bounded system, rerun the distinctness falsifier over every
  // word the certificate mentions: completing one cap deeper must not
  // collapse any of their normal forms.
  if (!sys.confluent()) {
    KbOptions kb3 = kb2;
    kb3.target_confluence = sys.confluence_bound() + 2;
    kb3.max_lhs_length = std::max(kb3.max_lhs_length, kb3.target_confluence);
    RewritingSystem deeper = knuth_bendix(p, kb3);
    std::vector<const Word*> mentioned;
    for (const auto& w : cert.seed) mentioned.push_back(&w);
    auto collect = [&](auto&& self, const CertNode& n) -> void {
      if (n.is_leaf) {
        for (const auto& s : n.steps) {
          mentioned.push_back(&s.x);
          mentioned.push_back(&s.y);
          mentioned.push_back(&s.product);
        }
        return;
      }
      mentioned.push_back(&n.branch);
      if (n.positive) self(self, *n.positive);
      if (n.negative) self(self, *n.negative);
    };
    collect(collect, *cert.root);
    for (const Word* w : mentioned) {
      Word nf = sys.reduce(*w);
      if (deeper.reduce(nf) != nf) {
        return fail("normal form of '" + p.render_word(*w) +
                    "' is unstable under a deeper completion");
      }
    }
  }

  std::vector<Word> assumptions;
  for (const auto& w : cert.seed) {
    Word nf = sys.reduce(w);
    if (nf.empty()) return fail("seed element is the identity");
    assumptions.push_back(std::move(nf));
  }

  std::string failure;
  auto walk = [&](auto&& self, const CertNode& n, std::vector<Word> assumed) -> bool {
    if (n.is_leaf) {
      std::set<Word> justified(assumed.begin(), assumed.end());
      if (n.steps.empty()) {
        failure = "leaf with empty derivation chain";
        return false;
      }
      for (std::size_t i = 0; i < n.steps.size(); ++i) {
        const ChainStep& s = n.steps[i];
        Word nx = sys.reduce(s.x);
        Word ny = sys.reduce(s.y);
        if (!justified.count(nx)) {
          failure = "step operand '" + p.render_word(s.x) + "' is not justified";
          return false;
        }
        if (!justified.count(ny)) {
          failure = "step operand '" + p.render_word(s.y) + "' is not justified";
          return false;
        }
        Word prod = sys.reduce(concat(s.x, s.y));
        if (s.product != prod) {
          failure = "step product '" + p.render_word(s.product) +
                    "' is not the normal form of '" + p.render_word(s.x) + "'*'" +
                    p.render_word(s.y) + "'";
          return false;
        }
        justified.insert(prod);
      }
      if (!n.steps.back().product.empty()) {
        failure = "final step does not derive the identity";
        return false;
      }
      return true;
    }
    if (!n.positive || !n.negative) {
      failure = "internal node missing a branch child";
      return false;
    }
    Word nb = sys.reduce(n.branch);
    if (nb.empty()) {
      failure = "branch element is the identity";
      return false;
    }
    std::vector<Word> pos = assumed;
    pos.push_back(nb);
    if (!self(self, *n.positive, std::move(pos))) return false;
    std::vector<Word> neg = std::move(assumed);
    neg.push_back(sys.reduce(invert(n.branch)));
    return self(self, *n.negative, std::move(neg));
  };
  if (!walk(walk, *cert.root, assumptions)) return {false, failure};
  return {true, ""};
}

}  // namespace lorder
