#pragma once

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "birat/algebra/polynomial.hpp"
#include "birat/ideal/hilbert.hpp"

namespace birat {

template <class F>
struct GroebnerBasis {
  RingPtr<F> ring;  // carries the order the basis is reduced for
  std::vector<Polynomial<F>> elements;

  // Normal form of f (from any ring of the same shape), returned in `ring`.
  Polynomial<F> reduce(const Polynomial<F>& f) const;
  bool contains(const Polynomial<F>& f) const { return reduce(f).is_zero(); }
  bool is_unit() const { return elements.size() == 1 && elements[0].is_constant(); }
  std::vector<Monomial> leading_monomials() const;
};

template <class F>
using BasisPtr = std::shared_ptr<const GroebnerBasis<F>>;

// Generator list plus a lazily filled, shared cache of reduced bases per order.
template <class F>
class Ideal {
 public:
  using Poly = Polynomial<F>;

  Ideal() = default;
  Ideal(RingPtr<F> ring, std::vector<Poly> gens);
  static Ideal unit(const RingPtr<F>& ring) { return Ideal(ring, {Poly::constant(ring, 1LL)}); }
  static Ideal zero(const RingPtr<F>& ring) { return Ideal(ring, {}); }
  static Ideal parse(const RingPtr<F>& ring, const std::vector<std::string>& gens);

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Poly>& generators() const { return gens_; }
  bool homogeneous() const { return homogeneous_; }

  BasisPtr<F> groebner() const { return groebner(ring_->order()); }
  BasisPtr<F> groebner(const MonomialOrder& order) const;

  bool is_unit() const { return groebner()->is_unit(); }
  bool is_zero() const { return gens_.empty(); }
  bool contains(const Poly& f) const { return groebner()->contains(f); }
  bool contains(const Ideal& other) const;
  bool equals(const Ideal& other) const { return contains(other) && other.contains(*this); }

  // The same ideal generated by its reduced basis for the ring order.
  Ideal reduced() const;
  std::string cache_key(const MonomialOrder& order) const;

 private:
  struct Shared {
    std::mutex mu;
    std::vector<std::pair<MonomialOrder, BasisPtr<F>>> bases;
  };

  RingPtr<F> ring_;
  std::vector<Poly> gens_;
  bool homogeneous_ = true;
  std::shared_ptr<Shared> shared_;
};

// Text interchange: a ring header line then one generator per line.
template <class F>
std::string ideal_to_text(const Ideal<F>& I);
std::string ring_header_field(const std::string& header_line);
template <class F>
RingPtr<F> parse_ring_header(const std::string& header_line);
template <class F>
Ideal<F> parse_ideal_text(const std::string& text);

}  // namespace birat
