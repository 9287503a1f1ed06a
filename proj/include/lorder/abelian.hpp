#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

#include "lorder/words.hpp"

namespace lorder {

using BigInt = boost::multiprecision::cpp_int;

struct IntMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<BigInt> a;

  IntMatrix() = default;
  IntMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  BigInt& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const BigInt& at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  static IntMatrix identity(std::size_t n);
};

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y);
BigInt determinant(IntMatrix m);  // fraction-free Gaussian elimination

// Exponent-sum matrix: rows = relators, cols = generators.
IntMatrix abelianization_matrix(const Presentation& p);

struct SnfResult {
  std::vector<BigInt> diagonal;  // d1 | d2 | ..., length min(rows, cols)
  IntMatrix u, v;                // unimodular, u*m*v = diag
};

SnfResult smith_normal_form(const IntMatrix& m);

struct AbelianInvariants {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // invariant factors > 1, divisibility chain

  bool is_finite() const { return free_rank == 0; }
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  bool has_even_torsion() const;
  BigInt exponent() const;  // largest invariant factor, 1 if torsion-free
  std::string to_string() const;
  bool operator==(const AbelianInvariants&) const = default;
};

AbelianInvariants h1(const Presentation& p);

struct CyclicEpi {
  long modulus = 0;
  std::vector<long> images;  // one residue per generator
};

// All surjections G -> Z/n up to kernel equality.
std::vector<CyclicEpi> epimorphisms_to_cyclic(const Presentation& p, long n);

}  // namespace lorder
