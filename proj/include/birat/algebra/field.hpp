#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace birat {

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public AlgebraError {
 public:
  DivisionByZero() : AlgebraError("division by zero") {}
};

class ContextMismatch : public AlgebraError {
 public:
  explicit ContextMismatch(const std::string& what)
      : AlgebraError("context mismatch: " + what) {}
};

bool is_prime(std::uint64_t n);

// Residues modulo a prime below 2^31, stored in [0, p).
class PrimeField {
 public:
  using Element = std::uint32_t;

  explicit PrimeField(std::uint32_t p);

  std::uint32_t characteristic() const { return p_; }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }
  bool operator!=(const PrimeField& o) const { return p_ != o.p_; }

  Element zero() const { return 0; }
  Element one() const { return 1; }
  bool is_zero(Element a) const { return a == 0; }
  bool is_one(Element a) const { return a == 1; }

  Element from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Element>(r < 0 ? r + p_ : r);
  }
  Element from_mpz(const mpz_class& v) const;
  Element from_rational(const mpq_class& q) const;

  Element add(Element a, Element b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element inv(Element a) const;
  Element div(Element a, Element b) const { return mul(a, inv(b)); }
  Element pow(Element a, std::uint64_t e) const;

  // Symmetric representative, so that -1 prints as "-1" rather than p-1.
  long long to_signed(Element a) const {
    return a > p_ / 2 ? static_cast<long long>(a) - p_ : static_cast<long long>(a);
  }
  std::string to_string(Element a) const { return std::to_string(to_signed(a)); }
  std::string describe() const { return "fp " + std::to_string(p_); }

 private:
  std::uint32_t p_;
};

class RationalField {
 public:
  using Element = mpq_class;

  bool operator==(const RationalField&) const { return true; }
  bool operator!=(const RationalField&) const { return false; }
  std::uint32_t characteristic() const { return 0; }

  Element zero() const { return Element(0); }
  Element one() const { return Element(1); }
  bool is_zero(const Element& a) const { return sgn(a) == 0; }
  bool is_one(const Element& a) const { return a == 1; }

  Element from_int(long long v) const { return Element(static_cast<long>(v)); }
  Element from_mpz(const mpz_class& v) const { return Element(v); }
  Element from_rational(mpq_class q) const {
    q.canonicalize();
    return q;
  }

  Element add(const Element& a, const Element& b) const { return a + b; }
  Element sub(const Element& a, const Element& b) const { return a - b; }
  Element neg(const Element& a) const { return -a; }
  Element mul(const Element& a, const Element& b) const { return a * b; }
  Element inv(const Element& a) const {
    if (sgn(a) == 0) throw DivisionByZero();
    return 1 / a;
  }
  Element div(const Element& a, const Element& b) const {
    if (sgn(b) == 0) throw DivisionByZero();
    return a / b;
  }
  Element pow(const Element& a, std::uint64_t e) const;

  std::string to_string(const Element& a) const { return a.get_str(); }
  std::string describe() const { return "q"; }
};

}  // namespace birat
