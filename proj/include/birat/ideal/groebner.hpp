#pragma once

#include <vector>

#include "birat/algebra/polynomial.hpp"

namespace birat {

struct GroebnerStats {
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t pairs_skipped = 0;
};

// Reduced Groebner basis (monic, sorted by increasing leading monomial) of the
// ideal generated by gens, with respect to the order of their common ring.
template <class F>
std::vector<Polynomial<F>> buchberger(const std::vector<Polynomial<F>>& gens, GroebnerStats* stats = nullptr);

// Full reduction of f by basis; basis need not be a Groebner basis.
template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& basis);

template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g);

// Buchberger criterion, checked directly on every pair.
template <class F>
bool is_groebner_basis(const std::vector<Polynomial<F>>& basis);

}  // namespace birat
