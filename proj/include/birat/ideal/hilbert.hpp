#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "birat/algebra/monomial.hpp"

namespace birat {

struct HilbertData {
  int nvars = 0;
  // Numerator of the Hilbert series N(t) / (1-t)^nvars.
  std::vector<std::int64_t> numerator;
  // Hilbert polynomial coefficients, constant term first.
  std::vector<mpq_class> polynomial;
  int dimension = -1;  // projective; -1 for the empty scheme
  std::int64_t degree = 0;

  // 1 - constant term; meaningful for curves.
  std::int64_t arithmetic_genus() const;
  std::int64_t polynomial_constant() const;
  mpq_class polynomial_at(long t) const;
  // Value of the Hilbert function (dimension of the degree-d piece of the quotient).
  mpz_class function_value(long d) const;
  std::string polynomial_string() const;
};

// Numerator of the Hilbert series of k[x_0..x_{n-1}] / (gens).
std::vector<std::int64_t> hilbert_numerator(std::vector<Monomial> gens, int nvars);

HilbertData hilbert_from_monomials(const std::vector<Monomial>& gens, int nvars);

mpz_class binomial(long n, long k);

}  // namespace birat
