#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "birat/algebra/polynomial.hpp"

namespace birat {

template <class F>
using Vec = std::vector<typename F::Element>;
template <class F>
using Mat = std::vector<Vec<F>>;

using Rng = std::mt19937_64;

// Uniform nonzero scalars: residues for prime fields, small integers over Q.
template <class F>
typename F::Element random_scalar(const F& k, Rng& rng);

template <class F>
Vec<F> random_vector(const F& k, int n, Rng& rng) {
  Vec<F> v;
  for (int i = 0; i < n; ++i) v.push_back(random_scalar(k, rng));
  return v;
}

// Row echelon form in place; returns pivot columns.
template <class F>
std::vector<int> row_reduce(const F& k, Mat<F>& m);

template <class F>
int rank(const F& k, Mat<F> m) {
  return static_cast<int>(row_reduce(k, m).size());
}

// Basis of {v : m v = 0}.
template <class F>
Mat<F> nullspace(const F& k, Mat<F> m, int cols);

template <class F>
std::optional<Mat<F>> inverse(const F& k, const Mat<F>& m);

template <class F>
Vec<F> mat_vec(const F& k, const Mat<F>& m, const Vec<F>& v);

// Coefficient vector of a linear form.
template <class F>
Vec<F> linear_coefficients(const Polynomial<F>& form);

template <class F>
Polynomial<F> linear_form(const RingPtr<F>& ring, const Vec<F>& coeffs);

// Images of the coordinates under x -> m x, as linear forms.
template <class F>
std::vector<Polynomial<F>> linear_substitution(const RingPtr<F>& ring, const Mat<F>& m);

// Coefficients of polynomials on a shared monomial basis.
template <class F>
struct CoefficientMatrix {
  std::vector<Monomial> monomials;
  Mat<F> rows;
};

template <class F>
CoefficientMatrix<F> coefficient_matrix(const std::vector<Polynomial<F>>& polys);

// A basis of the span of the given polynomials (reduced echelon form).
template <class F>
std::vector<Polynomial<F>> span_basis(const std::vector<Polynomial<F>>& polys);

template <class F>
using PolyMat = std::vector<std::vector<Polynomial<F>>>;

template <class F>
Polynomial<F> determinant(const PolyMat<F>& m);

// Signed maximal minors of an r x (r+1) matrix: the kernel vector by Cramer's rule.
template <class F>
std::vector<Polynomial<F>> kernel_minors(const PolyMat<F>& m);

// All k x k minors.
template <class F>
std::vector<Polynomial<F>> minors(const PolyMat<F>& m, int k);

template <class F>
Polynomial<F> pfaffian(const PolyMat<F>& m);

// Roots in F_p of a univariate polynomial given by coefficients (constant first), by exhaustion.
std::vector<std::uint32_t> roots_mod_p(const PrimeField& k, const std::vector<std::uint32_t>& coeffs);

}  // namespace birat
