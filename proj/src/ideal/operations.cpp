#include "birat/ideal/operations.hpp"

#include <random>

#include "birat/ideal/groebner.hpp"
#include "birat/ideal/session.hpp"

namespace birat {

template <class F>
Ideal<F> sum(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(*I.ring(), *J.ring());
  auto gens = I.generators();
  for (const auto& g : J.generators()) gens.push_back(g);
  return Ideal<F>(I.ring(), std::move(gens));
}

template <class F>
Ideal<F> product(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(*I.ring(), *J.ring());
  std::vector<Polynomial<F>> gens;
  for (const auto& a : I.generators()) {
    for (const auto& b : J.generators()) gens.push_back(a * b);
  }
  return Ideal<F>(I.ring(), std::move(gens));
}

template <class F>
Ideal<F> power(const Ideal<F>& I, unsigned k) {
  if (k == 0) return Ideal<F>::unit(I.ring());
  Ideal<F> r = I;
  for (unsigned i = 1; i < k; ++i) r = Ideal<F>(I.ring(), product(r, I).reduced().generators());
  return r;
}

template <class F>
Ideal<F> map_ideal(const Ideal<F>& I, const std::vector<Polynomial<F>>& images, const RingPtr<F>& target) {
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.generators()) gens.push_back(substitute(g, images, target));
  return Ideal<F>(target, std::move(gens));
}

template <class F>
Ideal<F> eliminate(const Ideal<F>& I, int k) {
  if (k <= 0) return I;
  const auto& ring = I.ring();
  if (k > ring->nvars()) throw AlgebraError("eliminate: too many variables");
  auto gb = I.groebner(MonomialOrder::block(k, ring->order().weights()));
  std::uint32_t elim_mask = (k >= 32) ? ~0u : ((1u << k) - 1);
  std::vector<Polynomial<F>> kept;
  for (const auto& g : gb->elements) {
    if ((g.used_variables_mask() & elim_mask) == 0) kept.push_back(g.in_ring(ring));
  }
  return Ideal<F>(ring, std::move(kept));
}

namespace {

// Ring with one extra variable prepended (index 0).
template <class F>
RingPtr<F> with_leading_variable(const RingPtr<F>& ring, const std::string& name) {
  if (ring->nvars() + 1 > kMaxVars) throw AlgebraError("variable budget exceeded");
  std::vector<std::string> names{name};
  for (const auto& n : ring->names()) names.push_back(n);
  std::vector<int> weights;
  if (!ring->order().weights().empty()) {
    weights.push_back(1);
    for (int w : ring->order().weights()) weights.push_back(w);
  }
  return Ring<F>::make(ring->field(), ring->nvars() + 1, MonomialOrder::block(1, weights), names);
}

template <class F>
std::vector<Polynomial<F>> shift_images(const RingPtr<F>& target, int offset, int count) {
  std::vector<Polynomial<F>> imgs;
  for (int i = 0; i < count; ++i) imgs.push_back(Polynomial<F>::variable(target, i + offset));
  return imgs;
}

}  // namespace

template <class F>
Ideal<F> intersect(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(*I.ring(), *J.ring());
  const auto& ring = I.ring();
  if (I.is_zero() || J.is_zero()) return Ideal<F>::zero(ring);
  if (I.is_unit()) return J;
  if (J.is_unit()) return I;
  auto big = with_leading_variable(ring, "t_");
  auto up = shift_images(big, 1, ring->nvars());
  auto t = Polynomial<F>::variable(big, 0);
  auto one_minus_t = Polynomial<F>::constant(big, 1) - t;
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.groebner()->elements) gens.push_back(t * substitute(g, up, big));
  for (const auto& g : J.groebner()->elements) gens.push_back(one_minus_t * substitute(g, up, big));
  Ideal<F> E = eliminate(Ideal<F>(big, std::move(gens)), 1);
  std::vector<Polynomial<F>> down{Polynomial<F>(ring)};
  for (int i = 0; i < ring->nvars(); ++i) down.push_back(Polynomial<F>::variable(ring, i));
  return map_ideal(E, down, ring);
}

template <class F>
Ideal<F> intersect(const std::vector<Ideal<F>>& ideals) {
  if (ideals.empty()) throw AlgebraError("intersection of no ideals");
  Ideal<F> r = ideals[0];
  for (std::size_t i = 1; i < ideals.size(); ++i) r = intersect(r, ideals[i]);
  return r;
}

template <class F>
Ideal<F> colon(const Ideal<F>& I, const Polynomial<F>& f) {
  if (f.is_zero()) return Ideal<F>::unit(I.ring());
  if (f.is_constant()) return I;
  Ideal<F> both = intersect(I, Ideal<F>(I.ring(), {f}));
  std::vector<Polynomial<F>> gens;
  for (const auto& g : both.generators()) gens.push_back(divide_exact(g, f));
  return Ideal<F>(I.ring(), std::move(gens));
}

template <class F>
Ideal<F> colon(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(*I.ring(), *J.ring());
  if (J.is_zero()) throw AlgebraError("colon by the zero ideal");
  std::vector<Ideal<F>> parts;
  for (const auto& g : J.generators()) parts.push_back(colon(I, g));
  return intersect(parts);
}

namespace {

template <class F>
bool is_linear_form(const Polynomial<F>& f) {
  auto d = f.homogeneous_degree();
  return d && *d == 1;
}

template <class F>
bool linear_fast_path(const Ideal<F>& I) {
  return I.homogeneous() && I.ring()->order().standard_graded();
}

}  // namespace

template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Polynomial<F>& f) {
  if (f.is_zero()) throw AlgebraError("saturation by zero");
  if (f.is_constant()) return I;
  if (is_linear_form(f) && linear_fast_path(I)) return saturate_linear(I, f);
  Ideal<F> K = I;
  while (true) {
    Ideal<F> next = colon(K, f);
    if (K.contains(next)) return K;
    K = Ideal<F>(I.ring(), next.reduced().generators());
  }
}

template <class F>
Ideal<F> saturate(const Ideal<F>& I, const Ideal<F>& J) {
  require_same_ring(*I.ring(), *J.ring());
  if (J.is_zero()) throw AlgebraError("saturation by the zero ideal");
  std::vector<Ideal<F>> parts;
  for (const auto& g : J.generators()) {
    if (g.is_constant()) return I;
    parts.push_back(saturate(I, g));
  }
  return intersect(parts);
}

template <class F>
std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_form_to_last(const Polynomial<F>& l) {
  const auto& ring = l.ring();
  const F& k = ring->field();
  int n = ring->nvars();
  if (!is_linear_form(l)) throw AlgebraError("linear form expected");
  std::vector<typename F::Element> c(n, k.zero());
  for (const auto& t : l.terms()) {
    for (int i = 0; i < n; ++i) {
      if (t.m.e[i]) c[i] = t.c;
    }
  }
  int last = n - 1;
  int j = !k.is_zero(c[last]) ? last : -1;
  for (int i = last; i >= 0 && j < 0; --i) {
    if (!k.is_zero(c[i])) j = i;
  }
  std::vector<Polynomial<F>> psi, inv;
  for (int i = 0; i < n; ++i) {
    psi.push_back(Polynomial<F>::variable(ring, i));
    inv.push_back(Polynomial<F>::variable(ring, i));
  }
  auto X = [&](int i) { return Polynomial<F>::variable(ring, i); };
  auto cj_inv = k.inv(c[j]);
  // psi(x_j) = (x_last - sum_{i != j, last} c_i x_i - c_last x_j) / c_j, psi(x_last) = x_j
  Polynomial<F> img = X(last);
  for (int i = 0; i < n; ++i) {
    if (i == j || i == last) continue;
    img = img - X(i).scale(c[i]);
  }
  if (j != last) {
    img = img - X(j).scale(c[last]);
    psi[last] = X(j);
    inv[j] = X(last);
  }
  psi[j] = img.scale(cj_inv);
  inv[last] = l;
  return {psi, inv};
}

template <class F>
Ideal<F> saturate_linear(const Ideal<F>& I, const Polynomial<F>& l) {
  if (!linear_fast_path(I)) throw AlgebraError("saturate_linear needs a standard-graded homogeneous ideal");
  const auto& ring = I.ring();
  if (I.is_zero()) return I;
  auto [psi, inv] = move_form_to_last(l.in_ring(ring));
  auto grev = ring->order() == MonomialOrder::grevlex() ? ring : ring->with_order(MonomialOrder::grevlex());
  for (auto& p : psi) p = p.in_ring(grev);
  Ideal<F> moved = map_ideal(I, psi, grev);
  int last = ring->nvars() - 1;
  std::vector<Polynomial<F>> stripped;
  for (const auto& g : moved.groebner()->elements) stripped.push_back(strip_variable_power(g, last).second);
  Ideal<F> sat(grev, std::move(stripped));
  return map_ideal(sat, inv, ring);
}

template <class F>
Ideal<F> saturate_irrelevant(const Ideal<F>& I) {
  if (!linear_fast_path(I)) throw AlgebraError("saturate_irrelevant needs a standard-graded homogeneous ideal");
  if (I.is_zero() || I.is_unit()) return I;
  const auto& ring = I.ring();
  const F& k = ring->field();
  HilbertData target = hilbert(I);
  std::uint64_t seed = std::stoull(I.cache_key(ring->order()).substr(0, 15), nullptr, 16);
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 2; ++attempt) {
    Polynomial<F> l(ring);
    for (int i = 0; i < ring->nvars(); ++i) {
      l = l + Polynomial<F>::variable(ring, i).scale(k.from_int(static_cast<long long>(rng() % 30011) + 1));
    }
    Ideal<F> S = saturate_linear(I, l);
    if (hilbert(S).polynomial == target.polynomial) return S;
  }
  std::vector<Ideal<F>> parts;
  for (int i = 0; i < ring->nvars(); ++i) parts.push_back(saturate_linear(I, Polynomial<F>::variable(ring, i)));
  return intersect(parts);
}

template <class F>
bool radical_contains(const Ideal<F>& I, const Polynomial<F>& f) {
  const auto& ring = I.ring();
  if (ring->nvars() + 1 > kMaxVars) throw AlgebraError("variable budget exceeded");
  auto names = ring->names();
  names.push_back("w_");
  auto big = Ring<F>::make(ring->field(), ring->nvars() + 1, MonomialOrder::grevlex(), names);
  auto up = shift_images(big, 0, ring->nvars());
  std::vector<Polynomial<F>> gens;
  for (const auto& g : I.generators()) gens.push_back(substitute(g, up, big));
  gens.push_back(Polynomial<F>::constant(big, 1) - Polynomial<F>::variable(big, ring->nvars()) * substitute(f, up, big));
  auto gb = buchberger(gens);
  return gb.size() == 1 && gb[0].is_constant();
}

template <class F>
bool saturates_to_unit(const Ideal<F>& I, const Ideal<F>& J) {
  for (const auto& g : J.generators()) {
    if (!radical_contains(I, g)) return false;
  }
  return true;
}

template <class F>
HilbertData hilbert(const Ideal<F>& I) {
  if (!I.homogeneous() || !I.ring()->order().standard_graded()) {
    throw AlgebraError("hilbert: homogeneous ideal in a standard-graded ring required");
  }
  auto gb = I.groebner(MonomialOrder::grevlex());
  return hilbert_from_monomials(gb->leading_monomials(), I.ring()->nvars());
}

template <class F>
long zero_dim_length(const Ideal<F>& I) {
  HilbertData h = hilbert(I);
  if (h.dimension == -1) return 0;
  if (h.dimension != 0) throw AlgebraError("zero_dim_length: scheme has dimension " + std::to_string(h.dimension));
  return static_cast<long>(h.degree);
}

template <class F>
mpz_class graded_piece_dimension(const Ideal<F>& I, long d) {
  HilbertData h = hilbert(I);
  int n = I.ring()->nvars();
  return binomial(d + n - 1, n - 1) - h.function_value(d);
}

template <class F>
int projective_dimension(const Ideal<F>& I) {
  return hilbert(I).dimension;
}

#define BIRAT_INSTANTIATE(F)                                                                               \
  template Ideal<F> sum(const Ideal<F>&, const Ideal<F>&);                                                 \
  template Ideal<F> product(const Ideal<F>&, const Ideal<F>&);                                             \
  template Ideal<F> power(const Ideal<F>&, unsigned);                                                      \
  template Ideal<F> map_ideal(const Ideal<F>&, const std::vector<Polynomial<F>>&, const RingPtr<F>&);      \
  template Ideal<F> eliminate(const Ideal<F>&, int);                                                       \
  template Ideal<F> intersect(const Ideal<F>&, const Ideal<F>&);                                           \
  template Ideal<F> intersect(const std::vector<Ideal<F>>&);                                               \
  template Ideal<F> colon(const Ideal<F>&, const Polynomial<F>&);                                          \
  template Ideal<F> colon(const Ideal<F>&, const Ideal<F>&);                                               \
  template Ideal<F> saturate(const Ideal<F>&, const Polynomial<F>&);                                       \
  template Ideal<F> saturate(const Ideal<F>&, const Ideal<F>&);                                            \
  template Ideal<F> saturate_linear(const Ideal<F>&, const Polynomial<F>&);                                \
  template Ideal<F> saturate_irrelevant(const Ideal<F>&);                                                  \
  template bool radical_contains(const Ideal<F>&, const Polynomial<F>&);                                   \
  template bool saturates_to_unit(const Ideal<F>&, const Ideal<F>&);                                       \
  template HilbertData hilbert(const Ideal<F>&);                                                           \
  template long zero_dim_length(const Ideal<F>&);                                                          \
  template mpz_class graded_piece_dimension(const Ideal<F>&, long);                                        \
  template int projective_dimension(const Ideal<F>&);                                                      \
  template std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_form_to_last(           \
      const Polynomial<F>&);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
