#pragma once

#include <memory>
#include <string>
#include <vector>

#include "birat/algebra/field.hpp"
#include "birat/algebra/monomial.hpp"

namespace birat {

template <class F>
class Ring;

template <class F>
using RingPtr = std::shared_ptr<const Ring<F>>;

// A polynomial ring: coefficient field, variable names, and the monomial order
// used for the canonical term ordering of its elements.
template <class F>
class Ring {
 public:
  Ring(F field, int nvars, MonomialOrder order = MonomialOrder::grevlex(),
       std::vector<std::string> names = {})
      : field_(std::move(field)), nvars_(nvars), order_(std::move(order)), names_(std::move(names)) {
    if (nvars < 0 || nvars > kMaxVars) {
      throw AlgebraError("variable count must lie in [0, " + std::to_string(kMaxVars) + "]");
    }
    if (names_.empty()) {
      for (int i = 0; i < nvars; ++i) names_.push_back("x" + std::to_string(i));
    }
    if (static_cast<int>(names_.size()) != nvars) throw AlgebraError("variable name count mismatch");
    if (!order_.weights().empty() && static_cast<int>(order_.weights().size()) != nvars) {
      throw AlgebraError("weight vector length mismatch");
    }
    if (order_.kind() == OrderKind::Block && (order_.block_size() < 0 || order_.block_size() > nvars)) {
      throw AlgebraError("block size out of range");
    }
  }

  static RingPtr<F> make(F field, int nvars, MonomialOrder order = MonomialOrder::grevlex(),
                         std::vector<std::string> names = {}) {
    return std::make_shared<const Ring<F>>(std::move(field), nvars, std::move(order), std::move(names));
  }

  const F& field() const { return field_; }
  int nvars() const { return nvars_; }
  const MonomialOrder& order() const { return order_; }
  const std::vector<std::string>& names() const { return names_; }

  int compare(const Monomial& a, const Monomial& b) const { return order_.compare(a, b, nvars_); }
  long weighted_degree(const Monomial& m) const { return order_.weighted_degree(m, nvars_); }

  int var_index(const std::string& name) const {
    for (int i = 0; i < nvars_; ++i) {
      if (names_[i] == name) return i;
    }
    return -1;
  }

  bool same_as(const Ring& o) const {
    return this == &o || (field_ == o.field_ && nvars_ == o.nvars_ && order_ == o.order_ && names_ == o.names_);
  }

  RingPtr<F> with_order(MonomialOrder order) const {
    return make(field_, nvars_, std::move(order), names_);
  }
  RingPtr<F> with_names(std::vector<std::string> names) const {
    return make(field_, nvars_, order_, std::move(names));
  }

  std::string describe() const {
    std::string s = "ring " + field_.describe() + " nvars " + std::to_string(nvars_) + " order " +
                    order_.describe() + " vars";
    for (const auto& n : names_) s += " " + n;
    return s;
  }

 private:
  F field_;
  int nvars_;
  MonomialOrder order_;
  std::vector<std::string> names_;
};

template <class F>
void require_same_ring(const Ring<F>& a, const Ring<F>& b) {
  if (!a.same_as(b)) throw ContextMismatch(a.describe() + " vs " + b.describe());
}

}  // namespace birat
