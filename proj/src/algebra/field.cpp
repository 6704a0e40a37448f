#include "birat/algebra/field.hpp"

namespace birat {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull, 7ull}) {
    if (n % d == 0) return n == d;
  }
  for (std::uint64_t d = 11; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p)) {
    throw AlgebraError("not a prime below 2^31: " + std::to_string(p));
  }
}

PrimeField::Element PrimeField::from_mpz(const mpz_class& v) const {
  mpz_class r = v % p_;
  if (r < 0) r += p_;
  return static_cast<Element>(r.get_ui());
}

PrimeField::Element PrimeField::from_rational(const mpq_class& q) const {
  Element den = from_mpz(q.get_den());
  if (den == 0) throw DivisionByZero();
  return div(from_mpz(q.get_num()), den);
}

PrimeField::Element PrimeField::pow(Element a, std::uint64_t e) const {
  Element r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

PrimeField::Element PrimeField::inv(Element a) const {
  if (a == 0) throw DivisionByZero();
  std::int64_t t = 0, nt = 1, r = p_, nr = a;
  while (nr) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  return static_cast<Element>(t < 0 ? t + p_ : t);
}

RationalField::Element RationalField::pow(const Element& a, std::uint64_t e) const {
  Element r(1), b(a);
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

}  // namespace birat
