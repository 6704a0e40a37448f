#pragma once

#include <vector>

#include "birat/ideal/ideal.hpp"

namespace birat {

template <class F>
Ideal<F> sum(const Ideal<F>& I, const Ideal<F>& J);
template <class F>
Ideal<F> product(const Ideal<F>& I, const Ideal<F>& J);
template <class F>
Ideal<F> power(const Ideal<F>& I, unsigned k);

// Image of I's generators under the ring map x_i -> images[i].
template <class F>
Ideal<F> map_ideal(const Ideal<F>& I, const std::vector<Polynomial<F>>& images, const RingPtr<F>& target);

// I intersected with the subring free of the first k variables; generators stay in I's ring.
template <class F>
Ideal<F> eliminate(const Ideal<F>& I, int k);

template <class F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J);
template <class F>
Ideal<F> intersect(const std::vector<Ideal<F>>& ideals);

template <class F>
Ideal<F> colon(const Ideal<F>& I, const Polynomial<F>& f);
template <class F>
Ideal<F> colon(const Ideal<F>& I, const Ideal<F>& J);

template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Polynomial<F>& f);
template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Ideal<F>& J);

// Saturation of a homogeneous ideal by a linear form via a reverse-lexicographic basis
// with the form moved to the last coordinate.
template <class F>
Ideal<F> saturate_linear(const Ideal<F>& I, const Polynomial<F>& linear_form);

// Saturation by the irrelevant ideal. A random linear form is tried first and the
// result accepted only when its Hilbert polynomial matches that of I, which certifies
// equality; otherwise the exact intersection over all variables is used.
template <class F>
Ideal<F> saturate_irrelevant(const Ideal<F>& I);

// Whether f lies in the radical of I (one extra variable, unit-ideal test).
template <class F>
bool radical_contains(const Ideal<F>& I, const Polynomial<F>& f);

// V(I) is contained in V(J), i.e. saturate(I, J) is the unit ideal.
template <class F>
bool saturates_to_unit(const Ideal<F>& I, const Ideal<F>& J);

template <class F>
HilbertData hilbert(const Ideal<F>& I);

// Length of a zero-dimensional projective scheme; throws for other dimensions.
template <class F>
long zero_dim_length(const Ideal<F>& I);

template <class F>
mpz_class graded_piece_dimension(const Ideal<F>& I, long d);

template <class F>
int projective_dimension(const Ideal<F>& I);

// Linear automorphism psi of the coordinate ring with psi(form) = last variable;
// returns (psi images, psi^{-1} images).
template <class F>
std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_form_to_last(
    const Polynomial<F>& linear_form);

}  // namespace birat
