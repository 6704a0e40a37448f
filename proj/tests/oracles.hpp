#pragma once

// Independent linear-algebra oracles used to cross-check the ideal engine.

#include <map>
#include <vector>

#include <gmpxx.h>

#include "birat/algebra/polynomial.hpp"

namespace oracle {

using birat::Monomial;
using birat::Polynomial;

// Rank of a dense rational matrix by plain Gaussian elimination.
inline int rank(std::vector<std::vector<mpq_class>> m) {
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    for (int i = 0; i < rows; ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      mpq_class f = m[i][c] / m[r][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

// Determinant by elimination.
inline mpq_class determinant(std::vector<std::vector<mpq_class>> m) {
  int n = static_cast<int>(m.size());
  mpq_class det = 1;
  for (int c = 0; c < n; ++c) {
    int piv = -1;
    for (int i = c; i < n; ++i) {
      if (sgn(m[i][c]) != 0) {
        piv = i;
        break;
      }
    }
    if (piv < 0) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (int i = c + 1; i < n; ++i) {
      mpq_class f = m[i][c] / m[c][c];
      for (int j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

// All monomials in n variables of total degree exactly d.
inline std::vector<Monomial> monomials_of_degree(int n, int d) {
  std::vector<Monomial> out;
  std::vector<int> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      std::vector<unsigned> ex(e.begin(), e.end());
      out.push_back(Monomial::from_exponents(ex));
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

inline std::vector<Monomial> monomials_up_to(int n, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(n, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

template <class F>
mpq_class to_q(const F& field, const typename F::Element& c) {
  if constexpr (std::is_same_v<F, birat::RationalField>) {
    return c;
  } else {
    return mpq_class(field.to_signed(c));
  }
}

// Whether f lies in the span of {m * g : g in gens, deg(m * g) <= bound}, the
// truncated Macaulay matrix. For bound large enough this decides membership.
template <class F>
bool macaulay_member(const Polynomial<F>& f, const std::vector<Polynomial<F>>& gens, int bound) {
  const auto& ring = f.ring();
  const F& k = ring->field();
  int n = ring->nvars();
  std::vector<Polynomial<F>> rows;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    int dg = g.total_degree();
    for (const auto& m : monomials_up_to(n, bound - dg)) {
      rows.push_back(g.mul_term(m, k.one()));
    }
  }
  std::map<Monomial, int, bool (*)(const Monomial&, const Monomial&)> cols(
      [](const Monomial& a, const Monomial& b) { return a.e < b.e; });
  auto index = [&](const Polynomial<F>& p) {
    for (const auto& t : p.terms()) cols.emplace(t.m, static_cast<int>(cols.size()));
  };
  for (const auto& r : rows) index(r);
  index(f);
  auto dense = [&](const Polynomial<F>& p) {
    std::vector<mpq_class> v(cols.size());
    for (const auto& t : p.terms()) v[cols.at(t.m)] = to_q(k, t.c);
    return v;
  };
  std::vector<std::vector<mpq_class>> m;
  for (const auto& r : rows) m.push_back(dense(r));
  int base = rank(m);
  m.push_back(dense(f));
  // Rank over Q of integer lifts only equals rank over F_p for the rational field.
  static_assert(std::is_same_v<F, birat::RationalField>, "oracle works over the rationals");
  return rank(m) == base;
}

}  // namespace oracle
