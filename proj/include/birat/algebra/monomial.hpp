#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "birat/algebra/field.hpp"

namespace birat {

inline constexpr int kMaxVars = 16;

struct Monomial {
  std::array<std::uint16_t, kMaxVars> e{};
  std::uint32_t deg = 0;
  std::uint32_t mask = 0;  // bit i set iff e[i] > 0

  Monomial() = default;
  static Monomial variable(int i, unsigned power = 1) {
    Monomial m;
    m.e[i] = static_cast<std::uint16_t>(power);
    m.deg = power;
    m.mask = power ? (1u << i) : 0;
    return m;
  }
  static Monomial from_exponents(const std::vector<unsigned>& exps);

  bool is_one() const { return deg == 0; }
  bool operator==(const Monomial& o) const { return deg == o.deg && e == o.e; }
  bool operator!=(const Monomial& o) const { return !(*this == o); }

  void recompute() {
    deg = 0;
    mask = 0;
    for (int i = 0; i < kMaxVars; ++i) {
      deg += e[i];
      if (e[i]) mask |= 1u << i;
    }
  }

  bool divides(const Monomial& o) const {
    if ((mask & ~o.mask) != 0 || deg > o.deg) return false;
    for (int i = 0; i < kMaxVars; ++i) {
      if (e[i] > o.e[i]) return false;
    }
    return true;
  }
  bool coprime(const Monomial& o) const { return (mask & o.mask) == 0; }

  std::size_t hash() const {
    std::uint64_t h = 1469598103934665603ull;
    for (int i = 0; i < kMaxVars; ++i) {
      h ^= e[i];
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
  }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    unsigned s = unsigned(a.e[i]) + b.e[i];
    if (s > 0xFFFF) throw AlgebraError("exponent overflow");
    r.e[i] = static_cast<std::uint16_t>(s);
  }
  r.deg = a.deg + b.deg;
  r.mask = a.mask | b.mask;
  return r;
}

// Requires b | a.
inline Monomial operator/(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) {
    r.e[i] = static_cast<std::uint16_t>(a.e[i] - b.e[i]);
    if (r.e[i]) r.mask |= 1u << i;
  }
  r.deg = a.deg - b.deg;
  return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] > b.e[i] ? a.e[i] : b.e[i];
  r.recompute();
  return r;
}

inline Monomial gcd(const Monomial& a, const Monomial& b) {
  Monomial r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = a.e[i] < b.e[i] ? a.e[i] : b.e[i];
  r.recompute();
  return r;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

enum class OrderKind { GRevLex, Lex, Block };

// Block(k): the first k variables are compared first (graded reverse
// lexicographic inside the block), ties broken by grevlex on the rest.
// Optional positive weights turn every graded comparison into a weighted one;
// the weights double as the grading used for homogeneity and sugar.
class MonomialOrder {
 public:
  MonomialOrder() = default;
  static MonomialOrder grevlex(std::vector<int> weights = {}) {
    return MonomialOrder(OrderKind::GRevLex, 0, std::move(weights));
  }
  static MonomialOrder lex() { return MonomialOrder(OrderKind::Lex, 0, {}); }
  static MonomialOrder block(int k, std::vector<int> weights = {}) {
    return MonomialOrder(OrderKind::Block, k, std::move(weights));
  }

  OrderKind kind() const { return kind_; }
  int block_size() const { return block_; }
  const std::vector<int>& weights() const { return weights_; }
  bool standard_graded() const { return weights_.empty(); }

  int weight(int var) const { return weights_.empty() ? 1 : weights_[var]; }
  long weighted_degree(const Monomial& m, int nvars) const {
    if (weights_.empty()) return m.deg;
    long d = 0;
    for (int i = 0; i < nvars; ++i) d += long(weights_[i]) * m.e[i];
    return d;
  }

  // Negative, zero, positive like strcmp; positive means a > b.
  int compare(const Monomial& a, const Monomial& b, int nvars) const {
    switch (kind_) {
      case OrderKind::Lex:
        for (int i = 0; i < nvars; ++i) {
          if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
        }
        return 0;
      case OrderKind::GRevLex:
        return graded_revlex(a, b, 0, nvars);
      case OrderKind::Block: {
        int c = graded_revlex(a, b, 0, block_);
        if (c) return c;
        return graded_revlex(a, b, block_, nvars);
      }
    }
    return 0;
  }

  bool operator==(const MonomialOrder& o) const {
    return kind_ == o.kind_ && block_ == o.block_ && weights_ == o.weights_;
  }
  bool operator!=(const MonomialOrder& o) const { return !(*this == o); }

  std::string describe() const;
  static MonomialOrder parse(const std::string& text);

 private:
  MonomialOrder(OrderKind k, int block, std::vector<int> w)
      : kind_(k), block_(block), weights_(std::move(w)) {}

  int graded_revlex(const Monomial& a, const Monomial& b, int lo, int hi) const {
    if (weights_.empty() && lo == 0 && kind_ == OrderKind::GRevLex) {
      if (a.deg != b.deg) return a.deg > b.deg ? 1 : -1;
    } else {
      long da = 0, db = 0;
      for (int i = lo; i < hi; ++i) {
        da += long(weight(i)) * a.e[i];
        db += long(weight(i)) * b.e[i];
      }
      if (da != db) return da > db ? 1 : -1;
    }
    for (int i = hi - 1; i >= lo; --i) {
      if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
    }
    return 0;
  }

  OrderKind kind_ = OrderKind::GRevLex;
  int block_ = 0;
  std::vector<int> weights_;
};

}  // namespace birat
