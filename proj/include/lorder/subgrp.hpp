#pragma once

#include <cstdint>
#include <vector>

#include "lorder/enumerate.hpp"
#include "lorder/words.hpp"

namespace lorder {

// A presentation of a finite-index subgroup derived from a coset table,
// with each fresh generator's expression in the ambient group.
struct SubgroupPresentation {
  Presentation presentation;       // over fresh generators a, b, c, ...
  std::uint64_t origin_hash = 0;   // ambient presentation hash
  CosetTable table;
  std::vector<Word> schreier_map;  // fresh generator -> ambient word

  // Counts before empty relators were dropped; the Schreier index
  // formula speaks about these.
  int raw_generator_count = 0;
  int raw_relator_count = 0;
};

// Reidemeister-Schreier over a complete standardized coset table, using
// the shortlex-minimal Schreier transversal the table's BFS order gives.
SubgroupPresentation subgroup_presentation(const Presentation& p, const CosetTable& table);

// Conservative simplification: eliminate generators with a single total
// occurrence, substitute generators isolated in one relator, and shorten
// relators against each other.  Total relator length never exceeds
// growth_budget times the input's.
SubgroupPresentation tietze_simplify(SubgroupPresentation sp, double growth_budget = 3.0);

}  // namespace lorder
