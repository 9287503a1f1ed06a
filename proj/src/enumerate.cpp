#include "lorder/enumerate.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>
#include <sstream>
#include <thread>

namespace lorder {

int Ball::find(const Word& normal_form) const {
  auto it = index_.find(normal_form);
  return it == index_.end() ? kOutOfBall : it->second;
}

int Ball::mul(int i, int j) const {
  std::size_t n = reps_.size();
  if (full_table_) {
    return table_[static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j)];
  }
  std::uint64_t key = static_cast<std::uint64_t>(i) * n + static_cast<std::uint64_t>(j);
  auto it = memo_.find(key);
  if (it != memo_.end()) return it->second;
  Word prod = sys_->reduce(concat(reps_[static_cast<std::size_t>(i)],
                                  reps_[static_cast<std::size_t>(j)]));
  int id = prod.size() <= static_cast<std::size_t>(radius_) ? find(prod) : kOutOfBall;
  if (memo_.size() >= memo_cap_) {
    throw ResourceExceeded("on-demand product memo exceeds configured cap");
  }
  memo_.emplace(key, id);
  return id;
}

std::vector<std::size_t> Ball::sizes() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k < sphere_offsets_.size(); ++k) out.push_back(sphere_offsets_[k]);
  out.push_back(reps_.size());
  return out;
}

Ball build_ball(const RewritingSystem& sys, int radius, const BallOptions& opts) {
  // Every word reduced while building the ball is a product of two
  // reps, so length <= 2*radius; certified confluence up to that length
  // is enough for normal forms to be unique.
  if (!sys.confluent_up_to(2 * static_cast<std::size_t>(radius))) {
    throw NotConfluentError(
        "ball enumeration requires a rewriting system confluent on words of length <= 2r");
  }
  Ball ball;
  ball.radius_ = radius;
  ball.sys_ = &sys;
  ball.memo_cap_ = opts.memo_entry_cap;
  ball.reps_.push_back({});
  ball.index_.emplace(Word{}, 0);
  ball.sphere_offsets_.push_back(0);
  std::size_t layer_begin = 0;
  for (int len = 1; len <= radius; ++len) {
    std::size_t layer_end = ball.reps_.size();
    ball.sphere_offsets_.push_back(layer_end);
    // Normal forms are factor-closed, so every length-len rep extends a
    // length-(len-1) rep by one letter.
    for (std::size_t u = layer_begin; u < layer_end; ++u) {
      for (int code = 0; code < sys.num_letters(); ++code) {
        Word w = ball.reps_[u];
        w.push_back(Letter{static_cast<std::uint8_t>(code)});
        if (sys.reduce(w) != w) continue;
        if (ball.reps_.size() >= opts.max_reps) {
          throw ResourceExceeded("ball size exceeds configured cap");
        }
        ball.index_.emplace(w, static_cast<int>(ball.reps_.size()));
        ball.reps_.push_back(std::move(w));
      }
    }
    layer_begin = layer_end;
  }
  ball.inv_.resize(ball.reps_.size());
  for (std::size_t i = 0; i < ball.reps_.size(); ++i) {
    int id = ball.find(sys.reduce(invert(ball.reps_[i])));
    ball.inv_[i] = id;
  }
  std::size_t n = ball.reps_.size();
  std::size_t bytes = n * n * sizeof(std::int32_t);
  if (n <= opts.table_rep_cap && bytes <= opts.table_byte_cap) {
    ball.table_.assign(n * n, kOutOfBall);
    unsigned workers = std::max(1u, std::thread::hardware_concurrency());
    auto fill_rows = [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          Word prod = sys.reduce(concat(ball.reps_[i], ball.reps_[j]));
          ball.table_[i * n + j] =
              prod.size() <= static_cast<std::size_t>(radius) ? ball.find(prod) : kOutOfBall;
        }
      }
    };
    if (workers <= 1 || n < 64) {
      fill_rows(0, n);
    } else {
      std::vector<std::thread> pool;
      std::size_t chunk = (n + workers - 1) / workers;
      for (unsigned t = 0; t < workers; ++t) {
        std::size_t lo = std::min(n, static_cast<std::size_t>(t) * chunk);
        std::size_t hi = std::min(n, lo + chunk);
        if (lo < hi) pool.emplace_back(fill_rows, lo, hi);
      }
      for (auto& th : pool) th.join();
    }
    ball.full_table_ = true;
  }
  return ball;
}

GrowthFit fit_growth(const std::vector<std::size_t>& sizes, int r_lo, int r_hi) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (int r = r_lo; r <= r_hi; ++r) {
    double x = r;
    double y = std::log(static_cast<double>(sizes.at(static_cast<std::size_t>(r))));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (int r = r_lo; r <= r_hi; ++r) {
    double y = std::log(static_cast<double>(sizes.at(static_cast<std::size_t>(r))));
    double e = y - (intercept + slope * r);
    ss += e * e;
  }
  return {std::exp(intercept), std::exp(slope), std::sqrt(ss / n)};
}

// ---------------------------------------------------------------------------
// Coset tables.

int CosetTable::trace(int coset, const Word& w) const {
  int c = coset;
  for (Letter l : w) {
    c = rows[static_cast<std::size_t>(c)][l.code];
    if (c < 0) return -1;
  }
  return c;
}

bool CosetTable::relators_satisfied(const Presentation& p) const {
  for (int c = 0; c < index(); ++c) {
    for (const auto& r : p.relators) {
      if (trace(c, r) != c) return false;
    }
  }
  return true;
}

bool CosetTable::is_normal() const {
  if (!complete) return false;
  int n = index();
  std::vector<std::vector<int>> gens;
  for (int x = 0; x < num_letters; x += 2) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int c = 0; c < n; ++c) perm[static_cast<std::size_t>(c)] = rows[static_cast<std::size_t>(c)][x];
    gens.push_back(std::move(perm));
  }
  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int c = 0; c < n; ++c) identity[static_cast<std::size_t>(c)] = c;
  std::set<std::vector<int>> group{identity};
  std::deque<std::vector<int>> queue{identity};
  while (!queue.empty()) {
    auto g = queue.front();
    queue.pop_front();
    for (const auto& gen : gens) {
      std::vector<int> h(static_cast<std::size_t>(n));
      for (int c = 0; c < n; ++c) h[static_cast<std::size_t>(c)] = gen[static_cast<std::size_t>(g[static_cast<std::size_t>(c)])];
      if (group.insert(h).second) {
        if (group.size() > static_cast<std::size_t>(n)) return false;
        queue.push_back(std::move(h));
      }
    }
  }
  return group.size() == static_cast<std::size_t>(n);
}

std::string CosetTable::render() const {
  std::ostringstream out;
  for (int c = 0; c < index(); ++c) {
    out << c << ":";
    for (int x = 0; x < num_letters; ++x) {
      out << " " << rows[static_cast<std::size_t>(c)][x];
    }
    out << "\n";
  }
  return out.str();
}

CosetTable standardize(const CosetTable& t, int basepoint) {
  int n = t.index();
  std::vector<int> to_new(static_cast<std::size_t>(n), -1);
  std::vector<int> to_old;
  to_new[static_cast<std::size_t>(basepoint)] = 0;
  to_old.push_back(basepoint);
  for (std::size_t i = 0; i < to_old.size(); ++i) {
    int c = to_old[i];
    for (int x = 0; x < t.num_letters; ++x) {
      int d = t.rows[static_cast<std::size_t>(c)][x];
      if (d >= 0 && to_new[static_cast<std::size_t>(d)] < 0) {
        to_new[static_cast<std::size_t>(d)] = static_cast<int>(to_old.size());
        to_old.push_back(d);
      }
    }
  }
  CosetTable out;
  out.num_letters = t.num_letters;
  out.complete = t.complete;
  out.rows.assign(to_old.size(), std::vector<int>(static_cast<std::size_t>(t.num_letters), -1));
  for (std::size_t c = 0; c < to_old.size(); ++c) {
    for (int x = 0; x < t.num_letters; ++x) {
      int d = t.rows[static_cast<std::size_t>(to_old[c])][x];
      out.rows[c][static_cast<std::size_t>(x)] = d < 0 ? -1 : to_new[static_cast<std::size_t>(d)];
    }
  }
  return out;
}

namespace {

// HLT enumeration state with the classical coincidence routine.
struct Enumerator {
  int L;
  std::size_t max_cosets;
  std::vector<std::vector<int>> tab;
  std::vector<int> parent;  // union-find over cosets
  bool overflow = false;
  std::size_t defined = 1;

  Enumerator(int letters, std::size_t cap) : L(letters), max_cosets(cap) {
    tab.emplace_back(static_cast<std::size_t>(L), -1);
    parent.push_back(0);
  }

  int rep(int k) {
    while (parent[static_cast<std::size_t>(k)] != k) {
      parent[static_cast<std::size_t>(k)] =
          parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(k)])];
      k = parent[static_cast<std::size_t>(k)];
    }
    return k;
  }
  bool alive(int k) { return rep(k) == k; }

  int define(int a, int x) {
    if (defined >= max_cosets) {
      overflow = true;
      return -1;
    }
    int b = static_cast<int>(tab.size());
    tab.emplace_back(static_cast<std::size_t>(L), -1);
    parent.push_back(b);
    ++defined;
    tab[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] = b;
    tab[static_cast<std::size_t>(b)][static_cast<std::size_t>(x ^ 1)] = a;
    return b;
  }

  void merge(int k, int l, std::deque<int>& q) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    int mu = std::min(k, l), nu = std::max(k, l);
    parent[static_cast<std::size_t>(nu)] = mu;
    q.push_back(nu);
  }

  void coincidence(int a, int b) {
    std::deque<int> q;
    merge(a, b, q);
    while (!q.empty()) {
      int gamma = q.front();
      q.pop_front();
      for (int x = 0; x < L; ++x) {
        int delta = tab[static_cast<std::size_t>(gamma)][static_cast<std::size_t>(x)];
        if (delta < 0) continue;
        tab[static_cast<std::size_t>(delta)][static_cast<std::size_t>(x ^ 1)] = -1;
        int mu = rep(gamma);
        int nu = rep(delta);
        int& slot = tab[static_cast<std::size_t>(mu)][static_cast<std::size_t>(x)];
        if (slot >= 0) {
          merge(nu, slot, q);
        } else if (tab[static_cast<std::size_t>(nu)][static_cast<std::size_t>(x ^ 1)] >= 0) {
          merge(mu, tab[static_cast<std::size_t>(nu)][static_cast<std::size_t>(x ^ 1)], q);
        } else {
          slot = nu;
          tab[static_cast<std::size_t>(nu)][static_cast<std::size_t>(x ^ 1)] = mu;
        }
      }
    }
  }

  void scan_and_fill(int a, const Word& w) {
    int f = a, b = a;
    int i = 0, j = static_cast<int>(w.size()) - 1;
    for (;;) {
      while (i <= j && tab[static_cast<std::size_t>(f)][w[static_cast<std::size_t>(i)].code] >= 0) {
        f = tab[static_cast<std::size_t>(f)][w[static_cast<std::size_t>(i)].code];
        ++i;
      }
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i &&
             tab[static_cast<std::size_t>(b)][w[static_cast<std::size_t>(j)].inverse().code] >= 0) {
        b = tab[static_cast<std::size_t>(b)][w[static_cast<std::size_t>(j)].inverse().code];
        --j;
      }
      if (j < i) {
        if (f != b) coincidence(f, b);
        return;
      }
      if (j == i) {
        tab[static_cast<std::size_t>(f)][w[static_cast<std::size_t>(i)].code] = b;
        tab[static_cast<std::size_t>(b)][w[static_cast<std::size_t>(i)].inverse().code] = f;
        return;
      }
      if (define(f, w[static_cast<std::size_t>(i)].code) < 0) return;  // overflow
    }
  }
};

}  // namespace

ToddCoxeterResult todd_coxeter(const Presentation& p, const std::vector<Word>& subgens,
                               std::size_t max_cosets) {
  Enumerator e(p.num_letters(), max_cosets);
  for (const auto& g : subgens) {
    Word w = free_reduce(g);
    if (w.empty()) continue;
    e.scan_and_fill(0, w);
    if (e.overflow) return {std::nullopt, true, e.defined};
  }
  for (int a = 0; a < static_cast<int>(e.tab.size()); ++a) {
    if (!e.alive(a)) continue;
    for (const auto& r : p.relators) {
      e.scan_and_fill(a, r);
      if (e.overflow) return {std::nullopt, true, e.defined};
      if (!e.alive(a)) break;
    }
    if (!e.alive(a)) continue;
    for (int x = 0; x < p.num_letters(); ++x) {
      if (e.tab[static_cast<std::size_t>(a)][static_cast<std::size_t>(x)] < 0) {
        if (e.define(a, x) < 0) return {std::nullopt, true, e.defined};
      }
    }
  }
  // Compress live cosets.
  std::vector<int> to_new(e.tab.size(), -1);
  std::vector<int> live;
  for (int c = 0; c < static_cast<int>(e.tab.size()); ++c) {
    if (e.alive(c)) {
      to_new[static_cast<std::size_t>(c)] = static_cast<int>(live.size());
      live.push_back(c);
    }
  }
  CosetTable t;
  t.num_letters = p.num_letters();
  t.complete = true;
  t.rows.assign(live.size(), std::vector<int>(static_cast<std::size_t>(p.num_letters()), -1));
  for (std::size_t c = 0; c < live.size(); ++c) {
    for (int x = 0; x < p.num_letters(); ++x) {
      int d = e.tab[static_cast<std::size_t>(live[c])][static_cast<std::size_t>(x)];
      if (d < 0) {
        t.complete = false;
      } else {
        t.rows[c][static_cast<std::size_t>(x)] = to_new[static_cast<std::size_t>(e.rep(d))];
      }
    }
  }
  return {standardize(t), false, e.defined};
}

namespace {

using Table = std::vector<std::vector<int>>;

struct LowIndexSearch {
  const Presentation* p;
  int L;
  int max_index;
  std::vector<CosetTable> found;

  bool propagate(Table& tab) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (int c = 0; c < static_cast<int>(tab.size()); ++c) {
        for (const auto& w : p->relators) {
          int f = c, b = c;
          int i = 0, j = static_cast<int>(w.size()) - 1;
          while (i <= j && tab[static_cast<std::size_t>(f)][w[static_cast<std::size_t>(i)].code] >= 0) {
            f = tab[static_cast<std::size_t>(f)][w[static_cast<std::size_t>(i)].code];
            ++i;
          }
          while (j >= i && tab[static_cast<std::size_t>(b)][w[static_cast<std::size_t>(j)].inverse().code] >= 0) {
            b = tab[static_cast<std::size_t>(b)][w[static_cast<std::size_t>(j)].inverse().code];
            --j;
          }
          if (j < i) {
            if (f != b) return false;
          } else if (j == i) {
            int x = w[static_cast<std::size_t>(i)].code;
            int& fwd = tab[static_cast<std::size_t>(f)][static_cast<std::size_t>(x)];
            int& bwd = tab[static_cast<std::size_t>(b)][static_cast<std::size_t>(x ^ 1)];
            if (bwd >= 0 && bwd != f) return false;
            fwd = b;
            bwd = f;
            changed = true;
          }
        }
      }
    }
    return true;
  }

  void record(const Table& tab) {
    CosetTable t;
    t.num_letters = L;
    t.complete = true;
    t.rows = tab;
    CosetTable best = standardize(t, 0);
    for (int bp = 1; bp < t.index(); ++bp) {
      CosetTable cand = standardize(t, bp);
      if (cand.rows < best.rows) best = std::move(cand);
    }
    if (std::find(found.begin(), found.end(), best) == found.end()) {
      found.push_back(std::move(best));
    }
  }

  void dfs(Table tab) {
    if (!propagate(tab)) return;
    int c = -1, x = -1;
    for (int ci = 0; ci < static_cast<int>(tab.size()) && c < 0; ++ci) {
      for (int xi = 0; xi < L; ++xi) {
        if (tab[static_cast<std::size_t>(ci)][static_cast<std::size_t>(xi)] < 0) {
          c = ci;
          x = xi;
          break;
        }
      }
    }
    if (c < 0) {
      record(tab);
      return;
    }
    for (int beta = 0; beta < static_cast<int>(tab.size()); ++beta) {
      if (tab[static_cast<std::size_t>(beta)][static_cast<std::size_t>(x ^ 1)] >= 0) continue;
      Table child = tab;
      child[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = beta;
      child[static_cast<std::size_t>(beta)][static_cast<std::size_t>(x ^ 1)] = c;
      dfs(std::move(child));
    }
    if (static_cast<int>(tab.size()) < max_index) {
      Table child = tab;
      int beta = static_cast<int>(child.size());
      child.emplace_back(static_cast<std::size_t>(L), -1);
      child[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = beta;
      child[static_cast<std::size_t>(beta)][static_cast<std::size_t>(x ^ 1)] = c;
      dfs(std::move(child));
    }
  }
};

}  // namespace

std::vector<CosetTable> low_index_subgroups(const Presentation& p, int max_index) {
  LowIndexSearch search{&p, p.num_letters(), max_index, {}};
  Table start(1, std::vector<int>(static_cast<std::size_t>(p.num_letters()), -1));
  search.dfs(std::move(start));
  std::sort(search.found.begin(), search.found.end(),
            [](const CosetTable& a, const CosetTable& b) {
              if (a.index() != b.index()) return a.index() < b.index();
              return a.rows < b.rows;
            });
  return search.found;
}

}  // namespace lorder
