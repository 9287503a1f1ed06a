#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lorder {

// A letter is a generator or its inverse.  Code layout: 2*gen for the
// plain generator, 2*gen+1 for its inverse, so the natural ordering of
// codes is g1 < g1^-1 < g2 < g2^-1 < ...
struct Letter {
  std::uint8_t code = 0;

  static Letter make(int gen, bool inverted) {
    return Letter{static_cast<std::uint8_t>(2 * gen + (inverted ? 1 : 0))};
  }
  int gen() const { return code >> 1; }
  bool inverted() const { return (code & 1) != 0; }
  Letter inverse() const { return Letter{static_cast<std::uint8_t>(code ^ 1)}; }

  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

Word free_reduce(const Word& w);
Word invert(const Word& w);
Word cyclic_reduce(const Word& w);
Word concat(const Word& a, const Word& b);
Word power(const Word& w, int n);
bool is_freely_reduced(const Word& w);

struct WordHash {
  std::size_t operator()(const Word& w) const {
    std::uint64_t h = 14695981039346656037ull;
    for (Letter l : w) {
      h ^= l.code;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg), line(line_), column(column_) {}
};

// A finite presentation over single-letter generators.  Relators are
// stored freely and cyclically reduced; relators that reduce to the
// empty word are dropped at parse time.
struct Presentation {
  std::string alphabet;        // generator names in declaration order
  std::vector<Word> relators;

  int num_generators() const { return static_cast<int>(alphabet.size()); }
  int num_letters() const { return 2 * num_generators(); }

  static Presentation parse(const std::string& text);
  static Presentation make(std::string alphabet, const std::vector<std::string>& relators);

  Word parse_word(std::string_view s) const;
  std::string render_word(const Word& w) const;
  std::string render() const;
  std::string letter_order() const;  // e.g. "aAbB"
  std::uint64_t hash() const;
  std::string hash_hex() const;
};

// Images of the source generators in a target presentation's alphabet.
struct GeneratorMap {
  std::vector<Word> images;

  Word apply(const Word& w) const;
};

struct ConjugateFactor {
  Word conjugator;
  int relator_index;
  int sign;  // +1 or -1
};

// Checks target = prod_i u_i r_i^{s_i} u_i^-1 in the free group.  This
// is a sound identity check that needs no rewriting system.
bool verify_conjugate_product(const Word& target,
                              const std::vector<ConjugateFactor>& factors,
                              const Presentation& p);

}  // namespace lorder
