#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "birat/algebra/ring.hpp"

namespace birat {

template <class F>
struct Term {
  Monomial m;
  typename F::Element c;
};

// Terms are kept strictly decreasing in the ring order with nonzero
// coefficients, so equal polynomials have identical representations.
template <class F>
class Polynomial {
 public:
  using Elem = typename F::Element;
  using TermT = Term<F>;

  Polynomial() = default;
  explicit Polynomial(RingPtr<F> ring) : ring_(std::move(ring)) {}

  static Polynomial constant(const RingPtr<F>& r, const Elem& c) {
    Polynomial p(r);
    if (!r->field().is_zero(c)) p.terms_.push_back({Monomial(), c});
    return p;
  }
  static Polynomial constant(const RingPtr<F>& r, long long c) { return constant(r, r->field().from_int(c)); }
  static Polynomial constant(const RingPtr<F>& r, int c) { return constant(r, static_cast<long long>(c)); }
  static Polynomial variable(const RingPtr<F>& r, int i) {
    if (i < 0 || i >= r->nvars()) throw AlgebraError("variable index out of range");
    Polynomial p(r);
    p.terms_.push_back({Monomial::variable(i), r->field().one()});
    return p;
  }
  static Polynomial monomial(const RingPtr<F>& r, const Monomial& m, const Elem& c) {
    Polynomial p(r);
    if (!r->field().is_zero(c)) p.terms_.push_back({m, c});
    return p;
  }
  // Arbitrary term list: sorted, duplicates combined, zeros dropped.
  static Polynomial from_terms(const RingPtr<F>& r, std::vector<TermT> terms);
  // Caller guarantees canonical order and nonzero coefficients.
  static Polynomial from_sorted(const RingPtr<F>& r, std::vector<TermT> terms) {
    Polynomial p(r);
    p.terms_ = std::move(terms);
    return p;
  }

  const RingPtr<F>& ring() const { return ring_; }
  const F& field() const { return ring_->field(); }
  const std::vector<TermT>& terms() const { return terms_; }
  std::vector<TermT>& mutable_terms() { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.is_one()); }
  const TermT& lead() const {
    if (terms_.empty()) throw AlgebraError("leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& lm() const { return lead().m; }
  const Elem& lc() const { return lead().c; }

  // Largest total degree of a term; -1 for zero.
  int total_degree() const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.m.deg);
    return d;
  }
  int degree_in(int var) const {
    int d = -1;
    for (const auto& t : terms_) d = std::max<int>(d, t.m.e[var]);
    return d;
  }
  std::optional<int> homogeneous_degree() const;
  // groups[i] names the block of variable i.
  std::optional<std::vector<int>> multidegree(const std::vector<int>& groups) const;
  bool is_homogeneous() const { return is_zero() || homogeneous_degree().has_value(); }
  // Homogeneity with respect to the ring's weighted grading.
  bool is_weighted_homogeneous() const;
  std::uint32_t used_variables_mask() const {
    std::uint32_t m = 0;
    for (const auto& t : terms_) m |= t.m.mask;
    return m;
  }

  Polynomial operator-() const;
  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  Polynomial scale(const Elem& c) const;
  Polynomial mul_term(const Monomial& m, const Elem& c) const;
  Polynomial pow(unsigned e) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return scale(field().inv(lc()));
  }
  Polynomial derivative(int var) const;
  Elem evaluate(const std::vector<Elem>& point) const;
  // The same polynomial re-sorted for another ring with equal field and arity.
  Polynomial in_ring(const RingPtr<F>& target) const;
  std::string to_string() const;

 private:
  void check_ring(const Polynomial& o) const {
    if (!ring_ || !o.ring_) throw AlgebraError("polynomial without ring");
    if (ring_ != o.ring_) require_same_ring(*ring_, *o.ring_);
  }

  RingPtr<F> ring_;
  std::vector<TermT> terms_;
};

template <class F>
Polynomial<F> parse_polynomial(const RingPtr<F>& ring, const std::string& text);

// Ring homomorphism sending variable i of f's ring to images[i].
template <class F>
Polynomial<F> substitute(const Polynomial<F>& f, const std::vector<Polynomial<F>>& images,
                         const RingPtr<F>& target);

template <class F>
std::vector<std::vector<Polynomial<F>>> jacobian(const std::vector<Polynomial<F>>& forms);

// Division with remainder of f by a single divisor.
template <class F>
std::pair<Polynomial<F>, Polynomial<F>> divide(const Polynomial<F>& f, const Polynomial<F>& g);

// Throws if g does not divide f.
template <class F>
Polynomial<F> divide_exact(const Polynomial<F>& f, const Polynomial<F>& g);

// Content in the field sense: for Q the positive-leading rational c with
// f / c integral and primitive; for F_p the leading coefficient.
template <class F>
typename F::Element content(const Polynomial<F>& f);
template <>
PrimeField::Element content(const Polynomial<PrimeField>& f);
template <>
mpq_class content(const Polynomial<RationalField>& f);
template <class F>
Polynomial<F> primitive_part(const Polynomial<F>& f);

// Normalized (primitive for Q, monic for F_p) greatest common divisor.
template <class F>
Polynomial<F> gcd(const Polynomial<F>& a, const Polynomial<F>& b);
template <class F>
Polynomial<F> gcd(const std::vector<Polynomial<F>>& fs);

// Largest power of variable var dividing f, and the quotient.
template <class F>
std::pair<unsigned, Polynomial<F>> strip_variable_power(const Polynomial<F>& f, int var);

}  // namespace birat
