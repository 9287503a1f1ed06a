#include "lorder/abelian.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <sstream>

namespace lorder {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix matmul(const IntMatrix& x, const IntMatrix& y) {
  IntMatrix out(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t k = 0; k < x.cols; ++k) {
      if (x.at(i, k) == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        out.at(i, j) += x.at(i, k) * y.at(k, j);
      }
    }
  }
  return out;
}

BigInt determinant(IntMatrix m) {
  assert(m.rows == m.cols);
  std::size_t n = m.rows;
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && m.at(piv, k) == 0) ++piv;
      if (piv == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m.at(i, j) = (m.at(k, k) * m.at(i, j) - m.at(i, k) * m.at(k, j)) / prev;
      }
      m.at(i, k) = 0;
    }
    prev = m.at(k, k);
  }
  return sign * m.at(n - 1, n - 1);
}

IntMatrix abelianization_matrix(const Presentation& p) {
  IntMatrix m(p.relators.size(), static_cast<std::size_t>(p.num_generators()));
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    for (Letter l : p.relators[i]) {
      m.at(i, static_cast<std::size_t>(l.gen())) += l.inverted() ? -1 : 1;
    }
  }
  return m;
}

namespace {

void swap_rows(IntMatrix& m, IntMatrix& u, std::size_t i, std::size_t j) {
  for (std::size_t c = 0; c < m.cols; ++c) std::swap(m.at(i, c), m.at(j, c));
  for (std::size_t c = 0; c < u.cols; ++c) std::swap(u.at(i, c), u.at(j, c));
}

void swap_cols(IntMatrix& m, IntMatrix& v, std::size_t i, std::size_t j) {
  for (std::size_t r = 0; r < m.rows; ++r) std::swap(m.at(r, i), m.at(r, j));
  for (std::size_t r = 0; r < v.rows; ++r) std::swap(v.at(r, i), v.at(r, j));
}

// row i -= q * row j
void add_row(IntMatrix& m, IntMatrix& u, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) -= q * m.at(j, c);
  for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) -= q * u.at(j, c);
}

void add_col(IntMatrix& m, IntMatrix& v, std::size_t i, std::size_t j, const BigInt& q) {
  for (std::size_t r = 0; r < m.rows; ++r) m.at(r, i) -= q * m.at(r, j);
  for (std::size_t r = 0; r < v.rows; ++r) v.at(r, i) -= q * v.at(r, j);
}

void negate_row(IntMatrix& m, IntMatrix& u, std::size_t i) {
  for (std::size_t c = 0; c < m.cols; ++c) m.at(i, c) = -m.at(i, c);
  for (std::size_t c = 0; c < u.cols; ++c) u.at(i, c) = -u.at(i, c);
}

}  // namespace

SnfResult smith_normal_form(const IntMatrix& input) {
  IntMatrix m = input;
  IntMatrix u = IntMatrix::identity(m.rows);
  IntMatrix v = IntMatrix::identity(m.cols);
  std::size_t n = std::min(m.rows, m.cols);

  for (std::size_t k = 0; k < n; ++k) {
    for (;;) {
      // Find the entry of least absolute value in the remaining block.
      std::size_t bi = k, bj = k;
      BigInt best = 0;
      for (std::size_t i = k; i < m.rows; ++i) {
        for (std::size_t j = k; j < m.cols; ++j) {
          const BigInt& e = m.at(i, j);
          if (e != 0 && (best == 0 || abs(e) < abs(best))) {
            best = e;
            bi = i;
            bj = j;
          }
        }
      }
      if (best == 0) break;  // block is zero, pivot stays 0
      if (bi != k) swap_rows(m, u, k, bi);
      if (bj != k) swap_cols(m, v, k, bj);
      if (m.at(k, k) < 0) negate_row(m, u, k);

      bool clean = true;
      for (std::size_t i = k + 1; i < m.rows; ++i) {
        if (m.at(i, k) != 0) {
          BigInt q = m.at(i, k) / m.at(k, k);
          add_row(m, u, i, k, q);
          if (m.at(i, k) != 0) clean = false;
        }
      }
      for (std::size_t j = k + 1; j < m.cols; ++j) {
        if (m.at(k, j) != 0) {
          BigInt q = m.at(k, j) / m.at(k, k);
          add_col(m, v, j, k, q);
          if (m.at(k, j) != 0) clean = false;
        }
      }
      if (!clean) continue;  // smaller remainders appeared, pick a new pivot

      // Pivot must divide the rest of the block for the invariant chain.
      bool divides = true;
      for (std::size_t i = k + 1; i < m.rows && divides; ++i) {
        for (std::size_t j = k + 1; j < m.cols; ++j) {
          if (m.at(i, j) % m.at(k, k) != 0) {
            add_row(m, u, k, i, BigInt(-1));  // fold row i into the pivot row
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }

  SnfResult out;
  out.diagonal.reserve(n);
  for (std::size_t k = 0; k < n; ++k) out.diagonal.push_back(m.at(k, k));
  out.u = std::move(u);
  out.v = std::move(v);

  // Verify the transforms: u * input * v is diagonal with the reported
  // entries, and both transforms are unimodular.
  IntMatrix check = matmul(matmul(out.u, input), out.v);
  for (std::size_t i = 0; i < check.rows; ++i) {
    for (std::size_t j = 0; j < check.cols; ++j) {
      BigInt expect = (i == j && i < n) ? out.diagonal[i] : BigInt(0);
      if (check.at(i, j) != expect) {
        throw std::logic_error("smith_normal_form: transform product is not the diagonal");
      }
    }
  }
  if (abs(determinant(out.u)) != 1 || abs(determinant(out.v)) != 1) {
    throw std::logic_error("smith_normal_form: transform is not unimodular");
  }
  return out;
}

bool AbelianInvariants::has_even_torsion() const {
  for (const auto& d : torsion) {
    if (d % 2 == 0) return true;
  }
  return false;
}

BigInt AbelianInvariants::exponent() const {
  return torsion.empty() ? BigInt(1) : torsion.back();
}

std::string AbelianInvariants::to_string() const {
  std::ostringstream out;
  bool first = true;
  for (int i = 0; i < free_rank; ++i) {
    out << (first ? "" : " + ") << "Z";
    first = false;
  }
  for (const auto& d : torsion) {
    out << (first ? "" : " + ") << "Z/" << d;
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

AbelianInvariants h1(const Presentation& p) {
  IntMatrix m = abelianization_matrix(p);
  SnfResult snf = smith_normal_form(m);
  AbelianInvariants inv;
  int nonzero = 0;
  for (const auto& d : snf.diagonal) {
    if (d != 0) {
      ++nonzero;
      if (d > 1) inv.torsion.push_back(d);
    }
  }
  std::sort(inv.torsion.begin(), inv.torsion.end());
  inv.free_rank = p.num_generators() - nonzero;
  return inv;
}

std::vector<CyclicEpi> epimorphisms_to_cyclic(const Presentation& p, long n) {
  int g = p.num_generators();
  IntMatrix m = abelianization_matrix(p);
  std::vector<std::vector<long>> rel_rows;
  for (std::size_t i = 0; i < m.rows; ++i) {
    std::vector<long> row;
    for (std::size_t j = 0; j < m.cols; ++j) {
      row.push_back(static_cast<long>(m.at(i, j) % n));
    }
    rel_rows.push_back(std::move(row));
  }

  auto annihilates = [&](const std::vector<long>& vec) {
    for (const auto& row : rel_rows) {
      long s = 0;
      for (int j = 0; j < g; ++j) s = (s + row[static_cast<std::size_t>(j)] * vec[static_cast<std::size_t>(j)]) % n;
      if ((s % n + n) % n != 0) return false;
    }
    return true;
  };
  auto surjective = [&](const std::vector<long>& vec) {
    long d = n;
    for (long x : vec) d = std::gcd(d, x);
    return d == 1;
  };
  // Kernel inside (Z/n)^g; equal kernels there give equal kernels in G.
  auto kernel_set = [&](const std::vector<long>& vec) {
    std::set<std::vector<long>> ker;
    std::vector<long> x(static_cast<std::size_t>(g), 0);
    for (;;) {
      long s = 0;
      for (int j = 0; j < g; ++j) s = (s + vec[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)]) % n;
      if (s == 0) ker.insert(x);
      int j = 0;
      while (j < g && ++x[static_cast<std::size_t>(j)] == n) {
        x[static_cast<std::size_t>(j)] = 0;
        ++j;
      }
      if (j == g) break;
    }
    return ker;
  };

  std::vector<CyclicEpi> out;
  std::set<std::vector<long>> seen_kernel_keys;
  std::vector<long> vec(static_cast<std::size_t>(g), 0);
  for (;;) {
    if (annihilates(vec) && surjective(vec)) {
      auto ker = kernel_set(vec);
      std::vector<long> key;
      for (const auto& e : ker) key.insert(key.end(), e.begin(), e.end());
      if (seen_kernel_keys.insert(std::move(key)).second) {
        out.push_back({n, vec});
      }
    }
    int j = 0;
    while (j < g && ++vec[static_cast<std::size_t>(j)] == n) {
      vec[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == g) break;
  }
  return out;
}

}  // namespace lorder
