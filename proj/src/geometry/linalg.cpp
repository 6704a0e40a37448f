#include "birat/geometry/linalg.hpp"

#include <algorithm>

namespace birat {

template <>
PrimeField::Element random_scalar(const PrimeField& k, Rng& rng) {
  return static_cast<PrimeField::Element>(rng() % (k.characteristic() - 1) + 1);
}

template <>
RationalField::Element random_scalar(const RationalField&, Rng& rng) {
  long v = static_cast<long>(rng() % 19) - 9;
  return mpq_class(v == 0 ? 10 : v);
}

template <class F>
std::vector<int> row_reduce(const F& k, Mat<F>& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int piv = -1;
    for (int i = r; i < rows; ++i) {
      if (!k.is_zero(m[i][c])) {
        piv = i;
        break;
      }
    }
    if (piv < 0) continue;
    std::swap(m[piv], m[r]);
    auto inv = k.inv(m[r][c]);
    for (int j = c; j < cols; ++j) m[r][j] = k.mul(m[r][j], inv);
    for (int i = 0; i < rows; ++i) {
      if (i == r || k.is_zero(m[i][c])) continue;
      auto f = m[i][c];
      for (int j = c; j < cols; ++j) {
        if (!k.is_zero(m[r][j])) m[i][j] = k.sub(m[i][j], k.mul(f, m[r][j]));
      }
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

template <class F>
Mat<F> nullspace(const F& k, Mat<F> m, int cols) {
  auto pivots = row_reduce(k, m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  Mat<F> basis;
  for (int free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec<F> v(cols, k.zero());
    v[free] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(m[r][free]);
    basis.push_back(v);
  }
  return basis;
}

template <class F>
std::optional<Mat<F>> inverse(const F& k, const Mat<F>& m) {
  int n = static_cast<int>(m.size());
  Mat<F> aug(n, Vec<F>(2 * n, k.zero()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug[i][j] = m[i][j];
    aug[i][n + i] = k.one();
  }
  auto piv = row_reduce(k, aug);
  if (static_cast<int>(piv.size()) < n || piv[n - 1] != n - 1) return std::nullopt;
  Mat<F> out(n, Vec<F>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) out[i][j] = aug[i][n + j];
  }
  return out;
}

template <class F>
Vec<F> mat_vec(const F& k, const Mat<F>& m, const Vec<F>& v) {
  Vec<F> out;
  for (const auto& row : m) {
    auto s = k.zero();
    for (std::size_t j = 0; j < v.size(); ++j) s = k.add(s, k.mul(row[j], v[j]));
    out.push_back(s);
  }
  return out;
}

template <class F>
Vec<F> linear_coefficients(const Polynomial<F>& form) {
  const auto& k = form.field();
  int n = form.ring()->nvars();
  Vec<F> v(n, k.zero());
  for (const auto& t : form.terms()) {
    if (t.m.deg != 1) throw AlgebraError("linear form expected: " + form.to_string());
    for (int i = 0; i < n; ++i) {
      if (t.m.e[i]) v[i] = t.c;
    }
  }
  return v;
}

template <class F>
Polynomial<F> linear_form(const RingPtr<F>& ring, const Vec<F>& coeffs) {
  std::vector<Term<F>> terms;
  for (int i = 0; i < ring->nvars(); ++i) {
    if (!ring->field().is_zero(coeffs[i])) terms.push_back({Monomial::variable(i), coeffs[i]});
  }
  return Polynomial<F>::from_terms(ring, std::move(terms));
}

template <class F>
std::vector<Polynomial<F>> linear_substitution(const RingPtr<F>& ring, const Mat<F>& m) {
  std::vector<Polynomial<F>> out;
  for (const auto& row : m) out.push_back(linear_form(ring, row));
  return out;
}

template <class F>
CoefficientMatrix<F> coefficient_matrix(const std::vector<Polynomial<F>>& polys) {
  CoefficientMatrix<F> out;
  if (polys.empty()) return out;
  const auto& ring = polys[0].ring();
  std::vector<Monomial> all;
  for (const auto& p : polys) {
    for (const auto& t : p.terms()) all.push_back(t.m);
  }
  std::sort(all.begin(), all.end(), [&](const Monomial& a, const Monomial& b) { return ring->compare(a, b) > 0; });
  all.erase(std::unique(all.begin(), all.end()), all.end());
  out.monomials = all;
  std::unordered_map<Monomial, int, MonomialHash> index;
  for (std::size_t i = 0; i < all.size(); ++i) index[all[i]] = static_cast<int>(i);
  const auto& k = ring->field();
  for (const auto& p : polys) {
    Vec<F> row(all.size(), k.zero());
    for (const auto& t : p.terms()) row[index[t.m]] = t.c;
    out.rows.push_back(std::move(row));
  }
  return out;
}

template <class F>
std::vector<Polynomial<F>> span_basis(const std::vector<Polynomial<F>>& polys) {
  std::vector<Polynomial<F>> nonzero;
  for (const auto& p : polys) {
    if (!p.is_zero()) nonzero.push_back(p);
  }
  if (nonzero.empty()) return {};
  const auto& ring = nonzero[0].ring();
  auto cm = coefficient_matrix(nonzero);
  row_reduce(ring->field(), cm.rows);
  std::vector<Polynomial<F>> out;
  for (const auto& row : cm.rows) {
    std::vector<Term<F>> terms;
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (!ring->field().is_zero(row[j])) terms.push_back({cm.monomials[j], row[j]});
    }
    out.push_back(Polynomial<F>::from_sorted(ring, std::move(terms)));
  }
  return out;
}

namespace {

// Laplace expansion along successive rows, memoized on the set of columns still available.
template <class F>
Polynomial<F> det_rec(const PolyMat<F>& m, int row, std::uint32_t cols, const std::vector<int>& colmap,
                      std::map<std::pair<int, std::uint32_t>, Polynomial<F>>& memo) {
  const auto& ring = m[0][0].ring();
  if (row == static_cast<int>(m.size())) return Polynomial<F>::constant(ring, 1);
  auto key = std::make_pair(row, cols);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  Polynomial<F> acc(ring);
  int sign_pos = 0;
  for (int c : colmap) {
    if (!(cols & (1u << c))) continue;
    const auto& entry = m[row][c];
    if (!entry.is_zero()) {
      auto sub = det_rec(m, row + 1, cols & ~(1u << c), colmap, memo);
      auto term = entry * sub;
      acc = (sign_pos % 2 == 0) ? acc + term : acc - term;
    }
    ++sign_pos;
  }
  memo.emplace(key, acc);
  return acc;
}

}  // namespace

template <class F>
Polynomial<F> determinant(const PolyMat<F>& m) {
  if (m.empty()) throw AlgebraError("determinant of empty matrix");
  int n = static_cast<int>(m.size());
  std::vector<int> colmap;
  for (int c = 0; c < n; ++c) colmap.push_back(c);
  std::map<std::pair<int, std::uint32_t>, Polynomial<F>> memo;
  return det_rec(m, 0, (n >= 32) ? ~0u : ((1u << n) - 1), colmap, memo);
}

template <class F>
std::vector<Polynomial<F>> kernel_minors(const PolyMat<F>& m) {
  int r = static_cast<int>(m.size());
  int c = static_cast<int>(m[0].size());
  if (c != r + 1) throw AlgebraError("kernel_minors expects an r x (r+1) matrix");
  std::vector<int> colmap;
  for (int j = 0; j < c; ++j) colmap.push_back(j);
  std::map<std::pair<int, std::uint32_t>, Polynomial<F>> memo;
  std::uint32_t all = (1u << c) - 1;
  std::vector<Polynomial<F>> out;
  for (int j = 0; j < c; ++j) {
    auto d = det_rec(m, 0, all & ~(1u << j), colmap, memo);
    out.push_back(j % 2 == 0 ? d : -d);
  }
  return out;
}

template <class F>
std::vector<Polynomial<F>> minors(const PolyMat<F>& m, int k) {
  int rows = static_cast<int>(m.size());
  int cols = static_cast<int>(m[0].size());
  std::vector<Polynomial<F>> out;
  std::vector<int> rsel(k), csel(k);
  auto next = [](std::vector<int>& sel, int n) {
    int k = static_cast<int>(sel.size());
    int i = k - 1;
    while (i >= 0 && sel[i] == n - k + i) --i;
    if (i < 0) return false;
    ++sel[i];
    for (int j = i + 1; j < k; ++j) sel[j] = sel[j - 1] + 1;
    return true;
  };
  for (int i = 0; i < k; ++i) rsel[i] = i;
  do {
    for (int i = 0; i < k; ++i) csel[i] = i;
    do {
      PolyMat<F> sub(k, std::vector<Polynomial<F>>(k));
      for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) sub[a][b] = m[rsel[a]][csel[b]];
      }
      auto d = determinant(sub);
      if (!d.is_zero()) out.push_back(d);
    } while (next(csel, cols));
  } while (next(rsel, rows));
  return out;
}

namespace {

// Expansion along the first row: Pf(A) = sum_j (-1)^(j+1) a_{0j} Pf(A without rows/cols 0, j).
template <class F>
Polynomial<F> pfaffian_rec(const PolyMat<F>& m, const RingPtr<F>& ring) {
  int n = static_cast<int>(m.size());
  if (n % 2) return Polynomial<F>(ring);
  if (n == 0) return Polynomial<F>::constant(ring, 1);
  Polynomial<F> acc(ring);
  for (int j = 1; j < n; ++j) {
    if (m[0][j].is_zero()) continue;
    std::vector<int> keep;
    for (int i = 1; i < n; ++i) {
      if (i != j) keep.push_back(i);
    }
    PolyMat<F> sub(keep.size(), std::vector<Polynomial<F>>(keep.size()));
    for (std::size_t a = 0; a < keep.size(); ++a) {
      for (std::size_t b = 0; b < keep.size(); ++b) sub[a][b] = m[keep[a]][keep[b]];
    }
    auto term = m[0][j] * pfaffian_rec(sub, ring);
    acc = (j % 2 == 1) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

template <class F>
Polynomial<F> pfaffian(const PolyMat<F>& m) {
  if (m.empty()) throw AlgebraError("pfaffian of empty matrix");
  return pfaffian_rec(m, m[0][0].ring());
}

std::vector<std::uint32_t> roots_mod_p(const PrimeField& k, const std::vector<std::uint32_t>& coeffs) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t x = 0; x < k.characteristic(); ++x) {
    std::uint32_t v = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = k.add(k.mul(v, x), *it);
    if (v == 0) out.push_back(x);
  }
  return out;
}

#define BIRAT_INSTANTIATE(F)                                                                       \
  template std::vector<int> row_reduce(const F&, Mat<F>&);                                         \
  template Mat<F> nullspace(const F&, Mat<F>, int);                                                \
  template std::optional<Mat<F>> inverse(const F&, const Mat<F>&);                                 \
  template Vec<F> mat_vec(const F&, const Mat<F>&, const Vec<F>&);                                 \
  template Vec<F> linear_coefficients(const Polynomial<F>&);                                       \
  template Polynomial<F> linear_form(const RingPtr<F>&, const Vec<F>&);                            \
  template std::vector<Polynomial<F>> linear_substitution(const RingPtr<F>&, const Mat<F>&);       \
  template CoefficientMatrix<F> coefficient_matrix(const std::vector<Polynomial<F>>&);             \
  template std::vector<Polynomial<F>> span_basis(const std::vector<Polynomial<F>>&);               \
  template Polynomial<F> determinant(const PolyMat<F>&);                                           \
  template std::vector<Polynomial<F>> kernel_minors(const PolyMat<F>&);                            \
  template std::vector<Polynomial<F>> minors(const PolyMat<F>&, int);                              \
  template Polynomial<F> pfaffian(const PolyMat<F>&);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
