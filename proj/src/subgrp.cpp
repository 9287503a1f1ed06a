#include "lorder/subgrp.hpp"

#include <algorithm>
#include <stdexcept>

namespace lorder {

namespace {

const char* kNames = "abcdefghijklmnopqrstuvwxyz";

Word rotate(const Word& w, std::size_t k) {
  Word out(w.begin() + static_cast<long>(k), w.end());
  out.insert(out.end(), w.begin(), w.begin() + static_cast<long>(k));
  return out;
}

std::size_t total_length(const std::vector<Word>& relators) {
  std::size_t n = 0;
  for (const auto& r : relators) n += r.size();
  return n;
}

void remove_generator(std::vector<Word>& relators, std::vector<Word>& schreier_map,
                      std::string& alphabet, int gen) {
  for (auto& r : relators) {
    for (auto& l : r) {
      if (l.gen() > gen) l = Letter::make(l.gen() - 1, l.inverted());
    }
  }
  schreier_map.erase(schreier_map.begin() + gen);
  alphabet = std::string(kNames, schreier_map.size());
}

// Substitute gen -> image in a word.
Word substitute(const Word& w, int gen, const Word& image) {
  Word out;
  Word image_inv = invert(image);
  for (Letter l : w) {
    if (l.gen() == gen) {
      const Word& img = l.inverted() ? image_inv : image;
      out.insert(out.end(), img.begin(), img.end());
    } else {
      out.push_back(l);
    }
  }
  return free_reduce(out);
}

}  // namespace

SubgroupPresentation subgroup_presentation(const Presentation& p, const CosetTable& table) {
  if (!table.complete) {
    throw std::invalid_argument("subgroup_presentation requires a complete coset table");
  }
  int n = table.index();
  int L = p.num_letters();

  // Schreier transversal by BFS in letter order; shortlex-minimal since
  // shorter words are reached first and letters scan in order.
  std::vector<Word> transversal(static_cast<std::size_t>(n));
  std::vector<std::vector<char>> tree(static_cast<std::size_t>(n),
                                      std::vector<char>(static_cast<std::size_t>(L), 0));
  std::vector<int> bfs{0};
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  seen[0] = 1;
  for (std::size_t i = 0; i < bfs.size(); ++i) {
    int c = bfs[i];
    for (int x = 0; x < L; ++x) {
      int d = table.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
      if (!seen[static_cast<std::size_t>(d)]) {
        seen[static_cast<std::size_t>(d)] = 1;
        transversal[static_cast<std::size_t>(d)] = transversal[static_cast<std::size_t>(c)];
        transversal[static_cast<std::size_t>(d)].push_back(Letter{static_cast<std::uint8_t>(x)});
        tree[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = 1;
        tree[static_cast<std::size_t>(d)][static_cast<std::size_t>(x ^ 1)] = 1;
        bfs.push_back(d);
      }
    }
  }

  // One fresh generator per non-tree positive-letter edge.
  std::vector<std::vector<int>> edge_gen(static_cast<std::size_t>(n),
                                         std::vector<int>(static_cast<std::size_t>(L), 0));
  std::vector<Word> schreier_map;
  for (int c = 0; c < n; ++c) {
    for (int x = 0; x < L; x += 2) {
      if (tree[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)]) continue;
      int d = table.rows[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)];
      int id = static_cast<int>(schreier_map.size());
      edge_gen[static_cast<std::size_t>(c)][static_cast<std::size_t>(x)] = id + 1;
      edge_gen[static_cast<std::size_t>(d)][static_cast<std::size_t>(x ^ 1)] = -(id + 1);
      Word w = transversal[static_cast<std::size_t>(c)];
      w.push_back(Letter{static_cast<std::uint8_t>(x)});
      Word back = invert(transversal[static_cast<std::size_t>(d)]);
      w.insert(w.end(), back.begin(), back.end());
      schreier_map.push_back(free_reduce(w));
    }
  }
  if (schreier_map.size() > 26) {
    throw ResourceExceeded("subgroup needs more than 26 generators");
  }

  SubgroupPresentation sp;
  sp.origin_hash = p.hash();
  sp.table = table;
  sp.schreier_map = schreier_map;
  sp.raw_generator_count = static_cast<int>(schreier_map.size());
  sp.raw_relator_count = n * static_cast<int>(p.relators.size());
  sp.presentation.alphabet = std::string(kNames, schreier_map.size());
  for (int c = 0; c < n; ++c) {
    for (const auto& rel : p.relators) {
      Word out;
      int cur = c;
      for (Letter l : rel) {
        int e = edge_gen[static_cast<std::size_t>(cur)][l.code];
        if (e != 0) out.push_back(Letter::make(std::abs(e) - 1, e < 0));
        cur = table.rows[static_cast<std::size_t>(cur)][l.code];
      }
      Word reduced = cyclic_reduce(out);
      if (!reduced.empty()) sp.presentation.relators.push_back(std::move(reduced));
    }
  }
  return sp;
}

SubgroupPresentation tietze_simplify(SubgroupPresentation sp, double growth_budget) {
  auto& relators = sp.presentation.relators;
  std::size_t budget =
      static_cast<std::size_t>(growth_budget * static_cast<double>(total_length(relators))) + 16;

  for (int pass = 0; pass < 100; ++pass) {
    bool changed = false;

    for (auto& r : relators) r = cyclic_reduce(r);
    relators.erase(std::remove_if(relators.begin(), relators.end(),
                                  [](const Word& w) { return w.empty(); }),
                   relators.end());

    // Shorten relators against each other: if more than half of one
    // relator (under rotation/inversion) occurs in another, replace that
    // factor with the inverse of the complement.
    for (std::size_t i = 0; i < relators.size() && !changed; ++i) {
      for (std::size_t j = 0; j < relators.size() && !changed; ++j) {
        if (i == j) continue;
        const Word& src = relators[i];
        if (src.size() < 2 || src.size() > relators[j].size() + src.size() / 2) continue;
        for (int flip = 0; flip < 2 && !changed; ++flip) {
          Word base = flip ? invert(src) : src;
          for (std::size_t rot = 0; rot < base.size() && !changed; ++rot) {
            Word r = rotate(base, rot);
            for (std::size_t t = r.size() - 1; t > r.size() / 2; --t) {
              Word factor(r.begin(), r.begin() + static_cast<long>(t));
              auto it = std::search(relators[j].begin(), relators[j].end(), factor.begin(),
                                    factor.end());
              if (it == relators[j].end()) continue;
              Word replacement = invert(Word(r.begin() + static_cast<long>(t), r.end()));
              Word next(relators[j].begin(), it);
              next.insert(next.end(), replacement.begin(), replacement.end());
              next.insert(next.end(), it + static_cast<long>(t), relators[j].end());
              relators[j] = cyclic_reduce(next);
              changed = true;
              break;
            }
          }
        }
      }
    }
    if (changed) continue;

    // Generator elimination: find a relator containing some generator
    // exactly once; substitute that generator away everywhere.
    int best_gen = -1;
    std::size_t best_rel = 0, best_pos = 0, best_cost = SIZE_MAX;
    std::vector<std::size_t> occurrences(sp.schreier_map.size(), 0);
    for (const auto& r : relators) {
      for (Letter l : r) ++occurrences[static_cast<std::size_t>(l.gen())];
    }
    for (std::size_t ri = 0; ri < relators.size(); ++ri) {
      const Word& r = relators[ri];
      std::vector<std::size_t> in_rel(sp.schreier_map.size(), 0);
      for (Letter l : r) ++in_rel[static_cast<std::size_t>(l.gen())];
      for (std::size_t pos = 0; pos < r.size(); ++pos) {
        std::size_t g = static_cast<std::size_t>(r[pos].gen());
        if (in_rel[g] != 1) continue;
        std::size_t cost = (occurrences[g] - 1) * (r.size() - 1);
        if (cost < best_cost) {
          best_cost = cost;
          best_gen = static_cast<int>(g);
          best_rel = ri;
          best_pos = pos;
        }
      }
    }
    if (best_gen >= 0) {
      Word r = rotate(relators[best_rel], best_pos);  // starts with the occurrence
      Word rest(r.begin() + 1, r.end());
      Word image = r[0].inverted() ? rest : invert(rest);
      std::vector<Word> next;
      for (std::size_t ri = 0; ri < relators.size(); ++ri) {
        if (ri == best_rel) continue;
        next.push_back(cyclic_reduce(substitute(relators[ri], best_gen, image)));
      }
      if (total_length(next) <= budget) {
        relators = std::move(next);
        remove_generator(relators, sp.schreier_map, sp.presentation.alphabet, best_gen);
        changed = true;
      }
    }
    if (!changed) break;
  }

  for (auto& r : sp.presentation.relators) r = cyclic_reduce(r);
  sp.presentation.relators.erase(
      std::remove_if(sp.presentation.relators.begin(), sp.presentation.relators.end(),
                     [](const Word& w) { return w.empty(); }),
      sp.presentation.relators.end());
  return sp;
}

}  // namespace lorder
