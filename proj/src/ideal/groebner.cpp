#include "birat/ideal/groebner.hpp"

#include <algorithm>
#include <limits>

#include "birat/algebra/geobucket.hpp"

namespace birat {

namespace {

struct Pair {
  int i;  // -1 marks an input generator waiting to be inserted
  int j;
  Monomial lcm;
  long sugar;
};

template <class F>
class Engine {
 public:
  using Poly = Polynomial<F>;

  explicit Engine(RingPtr<F> ring) : ring_(std::move(ring)), k_(ring_->field()) {}

  std::vector<Poly> run(const std::vector<Poly>& gens, GroebnerStats* stats) {
    for (const auto& g : gens) {
      if (g.is_zero()) continue;
      if (g.is_constant()) return {Poly::constant(ring_, k_.one())};
      inputs_.push_back(g.monic());
      long s = 0;
      for (const auto& t : g.terms()) s = std::max(s, ring_->weighted_degree(t.m));
      pairs_.push_back({-1, static_cast<int>(inputs_.size()) - 1, g.lm(), s});
    }
    while (!pairs_.empty()) {
      std::size_t best = select();
      Pair p = pairs_[best];
      pairs_[best] = pairs_.back();
      pairs_.pop_back();
      Geobucket<F> bucket(ring_);
      long sugar = p.sugar;
      if (p.i < 0) {
        bucket.add(inputs_[p.j]);
      } else {
        const Poly& a = basis_[p.i];
        const Poly& b = basis_[p.j];
        bucket.add_scaled(a.terms(), 1, p.lcm / a.lm(), k_.one());
        bucket.add_scaled(b.terms(), 1, p.lcm / b.lm(), k_.neg(k_.one()));
      }
      ++st_.pairs_reduced;
      Poly h = reduce(bucket, sugar);
      if (h.is_zero()) {
        ++st_.zero_reductions;
        continue;
      }
      if (h.is_constant()) {
        if (stats) *stats = st_;
        return {Poly::constant(ring_, k_.one())};
      }
      insert(h.monic(), sugar);
    }
    if (stats) *stats = st_;
    return finish();
  }

 private:
  std::size_t select() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pairs_.size(); ++i) {
      const Pair& a = pairs_[i];
      const Pair& b = pairs_[best];
      if (a.sugar != b.sugar) {
        if (a.sugar < b.sugar) best = i;
        continue;
      }
      int c = ring_->compare(a.lcm, b.lcm);
      if (c < 0 || (c == 0 && std::tie(a.i, a.j) < std::tie(b.i, b.j))) best = i;
    }
    return best;
  }

  int find_reducer(const Monomial& m) const {
    int best = -1;
    for (int i = 0; i < static_cast<int>(basis_.size()); ++i) {
      const Monomial& lm = basis_[i].lm();
      if ((lm.mask & ~m.mask) != 0 || lm.deg > m.deg) continue;
      if (!lm.divides(m)) continue;
      if (best < 0 || basis_[i].size() < basis_[best].size()) best = i;
    }
    return best;
  }

  Poly reduce(Geobucket<F>& bucket, long& sugar) {
    std::vector<Term<F>> rem;
    while (auto t = bucket.pop()) {
      int r = find_reducer(t->m);
      if (r < 0) {
        rem.push_back(std::move(*t));
        continue;
      }
      const Poly& g = basis_[r];
      Monomial q = t->m / g.lm();
      sugar = std::max(sugar, sugar_[r] + ring_->weighted_degree(q));
      bucket.add_scaled(g.terms(), 1, q, k_.neg(t->c));
    }
    return Poly::from_sorted(ring_, std::move(rem));
  }

  void insert(Poly h, long sugar) {
    const Monomial lh = h.lm();
    int hi = static_cast<int>(basis_.size());
    basis_.push_back(std::move(h));
    sugar_.push_back(sugar);
    active_.push_back(true);

    std::vector<Pair> fresh;
    for (int i = 0; i < hi; ++i) {
      if (!active_[i]) continue;
      const Monomial& li = basis_[i].lm();
      Monomial l = lcm(li, lh);
      long s = std::max(sugar_[i] + ring_->weighted_degree(l / li), sugar + ring_->weighted_degree(l / lh));
      fresh.push_back({i, hi, l, s});
    }
    // Gebauer-Moeller: chain criterion among the new pairs, then coprimality.
    std::vector<char> alive(fresh.size(), 1);
    std::vector<Pair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      const Pair& p = fresh[a];
      bool coprime = basis_[p.i].lm().coprime(lh);
      bool dominated = false;
      if (!coprime) {
        for (std::size_t b = 0; b < fresh.size() && !dominated; ++b) {
          if (b == a || !alive[b]) continue;
          if (fresh[b].lcm.divides(p.lcm)) dominated = true;
        }
      }
      if (dominated) {
        alive[a] = 0;
        ++st_.pairs_skipped;
      }
    }
    for (std::size_t a = 0; a < fresh.size(); ++a) {
      if (!alive[a]) continue;
      if (basis_[fresh[a].i].lm().coprime(lh)) {
        ++st_.pairs_skipped;
        continue;
      }
      kept.push_back(fresh[a]);
    }
    std::vector<Pair> next;
    next.reserve(pairs_.size() + kept.size());
    for (auto& p : pairs_) {
      if (p.i >= 0 && lh.divides(p.lcm)) {
        Monomial l1 = lcm(basis_[p.i].lm(), lh);
        Monomial l2 = lcm(basis_[p.j].lm(), lh);
        if (l1 != p.lcm && l2 != p.lcm) {
          ++st_.pairs_skipped;
          continue;
        }
      }
      next.push_back(p);
    }
    for (auto& p : kept) next.push_back(p);
    pairs_ = std::move(next);
    for (int i = 0; i < hi; ++i) {
      if (active_[i] && lh.divides(basis_[i].lm())) active_[i] = false;
    }
  }

  std::vector<Poly> finish() {
    std::vector<Poly> g;
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      if (active_[i]) g.push_back(basis_[i]);
    }
    std::sort(g.begin(), g.end(), [&](const Poly& a, const Poly& b) { return ring_->compare(a.lm(), b.lm()) < 0; });
    std::vector<Poly> out;
    out.reserve(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) {
      Geobucket<F> bucket(ring_);
      bucket.add_scaled(g[i].terms(), 1, Monomial(), k_.one());
      std::vector<Term<F>> terms{g[i].lead()};
      while (auto t = bucket.pop()) {
        int r = -1;
        for (std::size_t j = 0; j < g.size(); ++j) {
          if (j != i && g[j].lm().divides(t->m)) {
            r = static_cast<int>(j);
            break;
          }
        }
        if (r < 0) {
          terms.push_back(std::move(*t));
        } else {
          bucket.add_scaled(g[r].terms(), 1, t->m / g[r].lm(), k_.neg(t->c));
        }
      }
      out.push_back(Poly::from_sorted(ring_, std::move(terms)).monic());
    }
    return out;
  }

  RingPtr<F> ring_;
  const F& k_;
  std::vector<Poly> inputs_;
  std::vector<Poly> basis_;
  std::vector<long> sugar_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  GroebnerStats st_;
};

}  // namespace

template <class F>
std::vector<Polynomial<F>> buchberger(const std::vector<Polynomial<F>>& gens, GroebnerStats* stats) {
  if (gens.empty()) return {};
  const auto& ring = gens[0].ring();
  for (const auto& g : gens) {
    if (g.ring() != ring) require_same_ring(*g.ring(), *ring);
  }
  return Engine<F>(ring).run(gens, stats);
}

template <class F>
Polynomial<F> normal_form(const Polynomial<F>& f, const std::vector<Polynomial<F>>& basis) {
  if (f.is_zero() || basis.empty()) return f;
  const auto& ring = f.ring();
  for (const auto& g : basis) {
    if (g.ring() != ring) require_same_ring(*g.ring(), *ring);
  }
  const F& k = ring->field();
  Geobucket<F> bucket(ring);
  bucket.add(f);
  std::vector<Term<F>> rem;
  while (auto t = bucket.pop()) {
    const Polynomial<F>* red = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && g.lm().divides(t->m)) {
        red = &g;
        break;
      }
    }
    if (!red) {
      rem.push_back(std::move(*t));
      continue;
    }
    auto c = k.div(t->c, red->lc());
    bucket.add_scaled(red->terms(), 1, t->m / red->lm(), k.neg(c));
  }
  return Polynomial<F>::from_sorted(ring, std::move(rem));
}

template <class F>
Polynomial<F> s_polynomial(const Polynomial<F>& f, const Polynomial<F>& g) {
  const F& k = f.field();
  Monomial l = lcm(f.lm(), g.lm());
  return f.mul_term(l / f.lm(), k.inv(f.lc())) - g.mul_term(l / g.lm(), k.inv(g.lc()));
}

template <class F>
bool is_groebner_basis(const std::vector<Polynomial<F>>& basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      if (!normal_form(s_polynomial(basis[i], basis[j]), basis).is_zero()) return false;
    }
  }
  return true;
}

#define BIRAT_INSTANTIATE(F)                                                                           \
  template std::vector<Polynomial<F>> buchberger(const std::vector<Polynomial<F>>&, GroebnerStats*);   \
  template Polynomial<F> normal_form(const Polynomial<F>&, const std::vector<Polynomial<F>>&);         \
  template Polynomial<F> s_polynomial(const Polynomial<F>&, const Polynomial<F>&);                     \
  template bool is_groebner_basis(const std::vector<Polynomial<F>>&);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
