#pragma once

#include <optional>
#include <vector>

#include "birat/algebra/polynomial.hpp"

namespace birat {

// Accumulator for long chains of additions (reduction, division). Buckets of
// geometrically growing capacity are stored in increasing term order so the
// leading term of each bucket sits at the back.
template <class F>
class Geobucket {
 public:
  using Elem = typename F::Element;
  using TermT = Term<F>;

  explicit Geobucket(const RingPtr<F>& ring) : ring_(ring) {}

  void add(const Polynomial<F>& p) { add_scaled(p.terms(), 0, Monomial(), ring_->field().one()); }

  // Adds c * m * terms[from..].
  void add_scaled(const std::vector<TermT>& terms, std::size_t from, const Monomial& m, const Elem& c) {
    if (from >= terms.size()) return;
    const F& k = ring_->field();
    std::vector<TermT> incoming;
    incoming.reserve(terms.size() - from);
    bool one = m.is_one();
    for (std::size_t i = terms.size(); i-- > from;) {
      incoming.push_back({one ? terms[i].m : terms[i].m * m, k.mul(terms[i].c, c)});
    }
    insert(std::move(incoming));
  }

  bool empty() {
    return !peek().has_value();
  }

  // Leading term after cancellation, without removing it.
  std::optional<TermT> peek() {
    const F& k = ring_->field();
    while (true) {
      int best = -1;
      for (int i = 0; i < static_cast<int>(buckets_.size()); ++i) {
        if (buckets_[i].empty()) continue;
        if (best < 0 || ring_->compare(buckets_[i].back().m, buckets_[best].back().m) > 0) best = i;
      }
      if (best < 0) return std::nullopt;
      Monomial m = buckets_[best].back().m;
      Elem sum = k.zero();
      for (auto& b : buckets_) {
        if (!b.empty() && b.back().m == m) {
          sum = k.add(sum, b.back().c);
          b.pop_back();
        }
      }
      if (!k.is_zero(sum)) {
        buckets_[best].push_back({m, sum});
        return buckets_[best].back();
      }
    }
  }

  std::optional<TermT> pop() {
    auto t = peek();
    if (!t) return t;
    for (auto& b : buckets_) {
      if (!b.empty() && b.back().m == t->m) {
        b.pop_back();
        break;
      }
    }
    return t;
  }

  Polynomial<F> drain() {
    std::vector<TermT> out;
    while (auto t = pop()) out.push_back(std::move(*t));
    return Polynomial<F>::from_sorted(ring_, std::move(out));
  }

 private:
  static std::size_t capacity(std::size_t i) { return std::size_t(16) << (2 * i); }

  std::vector<TermT> merge(std::vector<TermT>& a, std::vector<TermT>& b) {
    const F& k = ring_->field();
    std::vector<TermT> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
      int c = ring_->compare(a[i].m, b[j].m);
      if (c < 0) {
        out.push_back(std::move(a[i++]));
      } else if (c > 0) {
        out.push_back(std::move(b[j++]));
      } else {
        Elem s = k.add(a[i].c, b[j].c);
        if (!k.is_zero(s)) out.push_back({a[i].m, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
    for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
    return out;
  }

  void insert(std::vector<TermT> v) {
    std::size_t i = 0;
    while (capacity(i) < v.size()) ++i;
    while (true) {
      if (buckets_.size() <= i) buckets_.resize(i + 1);
      if (buckets_[i].empty()) {
        buckets_[i] = std::move(v);
      } else {
        buckets_[i] = merge(buckets_[i], v);
      }
      if (buckets_[i].size() <= capacity(i)) return;
      v = std::move(buckets_[i]);
      buckets_[i].clear();
      ++i;
    }
  }

  RingPtr<F> ring_;
  std::vector<std::vector<TermT>> buckets_;
};

}  // namespace birat
