#include "birat/geometry/variety.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "birat/ideal/groebner.hpp"

namespace birat {

namespace {

template <class F>
using Poly = Polynomial<F>;

template <class F>
Poly<F> var(const RingPtr<F>& r, int i) {
  return Poly<F>::variable(r, i);
}

template <class F>
std::vector<Poly<F>> variables(const RingPtr<F>& r, int offset, int count) {
  std::vector<Poly<F>> out;
  for (int i = 0; i < count; ++i) out.push_back(var(r, offset + i));
  return out;
}

template <class F>
std::vector<Poly<F>> zeros(const RingPtr<F>& r, int count) {
  return std::vector<Poly<F>>(count, Poly<F>(r));
}

template <class F>
int common_degree(const std::vector<Poly<F>>& forms) {
  int d = -1;
  for (const auto& f : forms) {
    if (f.is_zero()) continue;
    auto h = f.homogeneous_degree();
    if (!h) throw AlgebraError("map forms must be homogeneous: " + f.to_string());
    if (d >= 0 && *h != d) throw AlgebraError("map forms must share one degree");
    d = *h;
  }
  return d;
}

template <class F>
Poly<F> reduce_mod(const Poly<F>& f, const std::optional<Ideal<F>>& domain) {
  if (!domain || domain->is_zero()) return f;
  return domain->groebner()->reduce(f).in_ring(f.ring());
}

template <class F>
std::vector<std::vector<unsigned>> exponent_vectors(int n, int d) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> e(n, 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n - 1) {
      e[i] = left;
      out.push_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      self(self, i + 1, left - k);
    }
  };
  if (n > 0) rec(rec, 0, d);
  return out;
}

template <class F>
Ideal<F> point_ideal_impl(const RingPtr<F>& ring, const Vec<F>& point) {
  const F& k = ring->field();
  auto basis = nullspace(k, Mat<F>{point}, ring->nvars());
  std::vector<Poly<F>> forms;
  for (const auto& v : basis) forms.push_back(linear_form(ring, v));
  return Ideal<F>(ring, forms);
}

template <class F>
int first_nonzero(const F& k, const Vec<F>& v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!k.is_zero(v[i])) return static_cast<int>(i);
  }
  throw AlgebraError("zero vector is not a projective point");
}

template <class F>
Poly<F> random_form_through(const RingPtr<F>& ring, const Vec<F>& point, Rng& rng) {
  auto forms = point_ideal_impl(ring, point).generators();
  Poly<F> out(ring);
  for (const auto& f : forms) out += f.scale(random_scalar(ring->field(), rng));
  return out;
}

}  // namespace

template <class F>
LinearSubspace<F> LinearSubspace<F>::from_forms(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& forms) {
  const F& k = ring->field();
  Mat<F> coeffs;
  for (const auto& f : forms) coeffs.push_back(linear_coefficients(f));
  if (rank(k, coeffs) != static_cast<int>(forms.size())) throw AlgebraError("linear forms are dependent");
  LinearSubspace s;
  s.ring_ = ring;
  s.forms_ = forms;
  s.points_ = nullspace(k, coeffs, ring->nvars());
  if (s.points_.empty()) throw AlgebraError("linear subspace is empty");
  return s;
}

template <class F>
LinearSubspace<F> LinearSubspace<F>::from_points(const RingPtr<F>& ring, const Mat<F>& points) {
  const F& k = ring->field();
  if (rank(k, points) != static_cast<int>(points.size())) throw AlgebraError("spanning points are dependent");
  LinearSubspace s;
  s.ring_ = ring;
  s.points_ = points;
  for (const auto& v : nullspace(k, points, ring->nvars())) s.forms_.push_back(linear_form(ring, v));
  return s;
}

template <class F>
LinearSubspace<F> LinearSubspace<F>::random(const RingPtr<F>& ring, int dimension, Rng& rng) {
  const F& k = ring->field();
  for (;;) {
    Mat<F> pts;
    for (int i = 0; i <= dimension; ++i) pts.push_back(random_vector(k, ring->nvars(), rng));
    if (rank(k, pts) == dimension + 1) return from_points(ring, pts);
  }
}

template <class F>
bool LinearSubspace<F>::contains(const Vec<F>& point) const {
  for (const auto& f : forms_) {
    if (!ring_->field().is_zero(f.evaluate(point))) return false;
  }
  return true;
}

template <class F>
std::vector<Polynomial<F>> LinearSubspace<F>::parametrization(const RingPtr<F>& param_ring) const {
  if (param_ring->nvars() != dimension() + 1) throw AlgebraError("parameter ring has the wrong arity");
  Mat<F> m(ring_->nvars(), Vec<F>(points_.size()));
  for (std::size_t j = 0; j < points_.size(); ++j) {
    for (int i = 0; i < ring_->nvars(); ++i) m[i][j] = points_[j][i];
  }
  return linear_substitution(param_ring, m);
}

template <class F>
const HilbertData& Variety<F>::hilbert() const {
  if (!hilbert_) hilbert_ = std::make_shared<const HilbertData>(birat::hilbert(ideal_));
  return *hilbert_;
}

template <class F>
RationalMap<F>::RationalMap(RingPtr<F> src, RingPtr<F> tgt, std::vector<Polynomial<F>> fs,
                            std::optional<Ideal<F>> dom)
    : source(std::move(src)), target(std::move(tgt)), forms(std::move(fs)), domain(std::move(dom)) {
  if (static_cast<int>(forms.size()) != target->nvars()) throw AlgebraError("form count must match target arity");
  for (auto& f : forms) f = f.in_ring(source);
  common_degree(forms);
}

template <class F>
Vec<F> RationalMap<F>::evaluate(const Vec<F>& point) const {
  Vec<F> out;
  for (const auto& f : forms) out.push_back(f.evaluate(point));
  return out;
}

template <class F>
RingPtr<F> projective_space(const F& field, int n, const std::string& prefix) {
  std::vector<std::string> names;
  for (int i = 0; i <= n; ++i) names.push_back(prefix + std::to_string(i));
  return Ring<F>::make(field, n + 1, MonomialOrder::grevlex(), names);
}

template <class F>
RationalMap<F> identity_map(const RingPtr<F>& ring) {
  return RationalMap<F>(ring, ring, variables(ring, 0, ring->nvars()));
}

template <class F>
Ideal<F> point_ideal(const RingPtr<F>& ring, const Vec<F>& point) {
  return point_ideal_impl(ring, point);
}

template <class F>
std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_point_to_first(const RingPtr<F>& ring,
                                                                                       const Vec<F>& point) {
  const F& k = ring->field();
  int n = ring->nvars();
  int j = first_nonzero(k, point);
  // Columns of T: the point, then the unit vectors other than e_j.
  Mat<F> t(n, Vec<F>(n, k.zero()));
  for (int i = 0; i < n; ++i) t[i][0] = point[i];
  int col = 1;
  for (int i = 0; i < n; ++i) {
    if (i == j) continue;
    t[i][col++] = k.one();
  }
  auto tinv = inverse(k, t);
  return {linear_substitution(ring, t), linear_substitution(ring, *tinv)};
}

template <class F>
SegreData<F> segre_embed(const F& field, int a, int b) {
  if (a < 1 || b < 1) throw AlgebraError("segre factors must have positive dimension");
  std::vector<std::string> names;
  for (int i = 0; i <= a; ++i) names.push_back("x" + std::to_string(i));
  for (int j = 0; j <= b; ++j) names.push_back("y" + std::to_string(j));
  auto product = Ring<F>::make(field, a + b + 2, MonomialOrder::grevlex(), names);
  auto target = projective_space(field, (a + 1) * (b + 1) - 1, "z");
  std::vector<Poly<F>> forms;
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) forms.push_back(var(product, i) * var(product, a + 1 + j));
  }
  PolyMat<F> z(a + 1, std::vector<Poly<F>>(b + 1));
  for (int i = 0; i <= a; ++i) {
    for (int j = 0; j <= b; ++j) z[i][j] = var(target, i * (b + 1) + j);
  }
  RationalMap<F> map(product, target, forms);
  Ideal<F> quadrics(target, minors(z, 2));
  auto eliminated = image_closure(map).ideal();
  if (!quadrics.equals(eliminated)) throw AlgebraError("segre quadrics differ from the eliminated image");
  return {product, target, map, Variety<F>(quadrics)};
}

template <class F>
RationalMap<F> linear_projection(const LinearSubspace<F>& center, const std::string& target_prefix) {
  int c = static_cast<int>(center.forms().size());
  if (c < 2) throw AlgebraError("projection center must have codimension at least 2");
  auto target = projective_space(center.ring()->field(), c - 1, target_prefix);
  return RationalMap<F>(center.ring(), target, center.forms());
}

template <class F>
std::vector<Polynomial<F>> reduce_tuple(std::vector<Polynomial<F>> forms, const std::optional<Ideal<F>>& domain) {
  for (auto& f : forms) f = reduce_mod(f, domain);
  std::vector<Poly<F>> nonzero;
  for (const auto& f : forms) {
    if (!f.is_zero()) nonzero.push_back(f);
  }
  if (nonzero.empty()) throw AlgebraError("composition undefined: every form vanishes on the source");
  auto g = gcd(nonzero);
  if (!g.is_constant()) {
    for (auto& f : forms) {
      if (!f.is_zero()) f = divide_exact(f, g);
    }
  }
  if (domain && !domain->is_zero()) {
    // Reduction can leave forms of unequal degree only if some vanished; keep the tuple homogeneous.
    common_degree(forms);
  }
  return forms;
}

template <class F>
RationalMap<F> compose(const RationalMap<F>& outer, const RationalMap<F>& inner) {
  if (outer.source->nvars() != inner.target->nvars()) throw AlgebraError("composition arity mismatch");
  std::vector<Poly<F>> forms;
  for (const auto& f : outer.forms) forms.push_back(substitute(f, inner.forms, inner.source));
  return RationalMap<F>(inner.source, outer.target, reduce_tuple(std::move(forms), inner.domain), inner.domain);
}

template <class F>
Variety<F> image_closure(const RationalMap<F>& map) {
  int n = map.source->nvars();
  int m = map.target->nvars();
  int e = common_degree(map.forms);
  if (e < 0) throw AlgebraError("image of a map with no nonzero form");
  if (n + m + 1 > kMaxVars) throw AlgebraError("graph ring exceeds the variable limit");
  std::vector<std::string> names = map.source->names();
  names.push_back("t_");
  for (const auto& s : map.target->names()) names.push_back(s);
  std::vector<int> weights(n + 1, 1);
  weights.resize(n + 1 + m, e + 1);
  auto graph = Ring<F>::make(map.source->field(), n + m + 1, MonomialOrder::block(n + 1, weights), names);
  auto xs = variables(graph, 0, n);
  std::vector<Poly<F>> gens;
  if (map.domain) {
    for (const auto& g : map.domain->generators()) gens.push_back(substitute(g, xs, graph));
  }
  auto t = var(graph, n);
  for (int j = 0; j < m; ++j) gens.push_back(var(graph, n + 1 + j) - t * substitute(map.forms[j], xs, graph));
  auto eliminated = eliminate(Ideal<F>(graph, gens), n + 1);
  auto images = zeros(map.target, n + 1);
  for (int j = 0; j < m; ++j) images.push_back(var(map.target, j));
  return Variety<F>(map_ideal(eliminated, images, map.target).reduced());
}

template <class F>
Ideal<F> implicitize(const RationalMap<F>& map, int max_degree) {
  const F& k = map.source->field();
  int m = map.target->nvars();
  std::optional<BasisPtr<F>> domain_basis;
  if (map.domain && !map.domain->is_zero()) domain_basis = map.domain->groebner();
  auto reduce = [&](const Poly<F>& f) { return domain_basis ? (*domain_basis)->reduce(f).in_ring(f.ring()) : f; };
  struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.e < b.e; }
  };
  std::map<Monomial, Poly<F>, MonomialLess> values;
  values.emplace(Monomial(), Poly<F>::constant(map.source, 1LL));
  std::vector<Poly<F>> found;
  for (int d = 1; d <= max_degree; ++d) {
    auto exps = exponent_vectors<F>(m, d);
    std::vector<Poly<F>> images;
    std::vector<Monomial> monos;
    for (const auto& ex : exps) {
      auto mono = Monomial::from_exponents(ex);
      int j = 0;
      while (ex[j] == 0) ++j;
      auto prev = mono / Monomial::variable(j);
      auto value = reduce(values.at(prev) * map.forms[j]);
      values.emplace(mono, value);
      images.push_back(value);
      monos.push_back(mono);
    }
    auto cm = coefficient_matrix(images);
    // Kernel of the transpose: combinations of monomials whose images cancel.
    int cols = static_cast<int>(monos.size());
    Mat<F> t(cm.monomials.size(), Vec<F>(cols, k.zero()));
    for (int c = 0; c < cols; ++c) {
      for (std::size_t r = 0; r < cm.monomials.size(); ++r) t[r][c] = cm.rows[c][r];
    }
    auto kernel = cm.monomials.empty() ? nullspace(k, Mat<F>{Vec<F>(cols, k.zero())}, cols) : nullspace(k, t, cols);
    std::vector<Poly<F>> fresh;
    std::optional<BasisPtr<F>> lower;
    if (!found.empty()) lower = Ideal<F>(map.target, found).groebner();
    for (const auto& v : kernel) {
      std::vector<Term<F>> terms;
      for (int c = 0; c < cols; ++c) {
        if (!k.is_zero(v[c])) terms.push_back({monos[c], v[c]});
      }
      auto form = Poly<F>::from_terms(map.target, std::move(terms));
      if (lower) form = (*lower)->reduce(form).in_ring(map.target);
      if (!form.is_zero()) fresh.push_back(form);
    }
    for (const auto& f : span_basis(fresh)) found.push_back(f);
    for (auto it = values.begin(); it != values.end();) {
      it = static_cast<int>(it->first.deg) < d ? values.erase(it) : std::next(it);
    }
  }
  return Ideal<F>(map.target, found);
}

template <class F>
LinearRelations<F> graph_linear_relations(const RationalMap<F>& map) {
  int n = map.source->nvars();
  int m = map.target->nvars();
  int e = common_degree(map.forms);
  if (n + m + 1 > kMaxVars) throw AlgebraError("graph ring exceeds the variable limit");
  std::vector<std::string> names{"t_"};
  for (const auto& s : map.source->names()) names.push_back(s);
  for (const auto& s : map.target->names()) names.push_back(s);
  std::vector<int> weights(n + 1, 1);
  weights.resize(n + 1 + m, e + 1);
  auto with_t = Ring<F>::make(map.source->field(), n + m + 1, MonomialOrder::block(1, weights), names);
  auto xs = variables(with_t, 1, n);
  std::vector<Poly<F>> gens;
  if (map.domain) {
    for (const auto& g : map.domain->generators()) gens.push_back(substitute(g, xs, with_t));
  }
  auto t = var(with_t, 0);
  for (int j = 0; j < m; ++j) gens.push_back(var(with_t, n + 1 + j) - t * substitute(map.forms[j], xs, with_t));
  auto graph_ideal = eliminate(Ideal<F>(with_t, gens), 1);

  names.erase(names.begin());
  auto bigraded = Ring<F>::make(map.source->field(), n + m, MonomialOrder::block(n), names);
  std::vector<Poly<F>> images{Poly<F>(bigraded)};
  for (int i = 0; i < n + m; ++i) images.push_back(var(bigraded, i));
  auto graph = map_ideal(graph_ideal, images, bigraded);
  auto basis = graph.groebner();

  std::vector<Poly<F>> to_target = zeros(map.target, n);
  for (int j = 0; j < m; ++j) to_target.push_back(var(map.target, j));
  LinearRelations<F> rows;
  for (const auto& g : basis->elements) {
    bool linear = !g.is_zero();
    for (const auto& term : g.terms()) {
      unsigned xdeg = 0;
      for (int i = 0; i < n; ++i) xdeg += term.m.e[i];
      if (xdeg != 1) linear = false;
    }
    if (!linear) continue;
    std::vector<std::vector<Term<F>>> parts(n);
    for (const auto& term : g.terms()) {
      for (int i = 0; i < n; ++i) {
        if (term.m.e[i]) parts[i].push_back({term.m / Monomial::variable(i), term.c});
      }
    }
    std::vector<Poly<F>> row;
    for (int i = 0; i < n; ++i) {
      auto c = Poly<F>::from_terms(bigraded, std::move(parts[i]));
      row.push_back(substitute(c, to_target, map.target));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class F>
RationalMap<F> inverse_from_relations(const LinearRelations<F>& relations, const RingPtr<F>& source_ring,
                                      const RingPtr<F>& target_ring, Rng& rng) {
  const F& k = source_ring->field();
  int n = target_ring->nvars();
  auto point = random_vector(k, source_ring->nvars(), rng);
  auto row_degree = [](const std::vector<Poly<F>>& row) {
    int d = -1;
    for (const auto& c : row) d = std::max(d, c.total_degree());
    return d;
  };
  std::vector<int> order(relations.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return row_degree(relations[a]) < row_degree(relations[b]); });
  Mat<F> values;
  PolyMat<F> chosen;
  int current = 0;
  for (int idx : order) {
    if (current == n - 1) break;
    Vec<F> v;
    for (const auto& c : relations[idx]) v.push_back(c.in_ring(source_ring).evaluate(point));
    values.push_back(v);
    if (rank(k, values) > current) {
      ++current;
      std::vector<Poly<F>> row;
      for (const auto& c : relations[idx]) row.push_back(c.in_ring(source_ring));
      chosen.push_back(row);
    } else {
      values.pop_back();
    }
  }
  if (current < n - 1) throw AlgebraError("map not birational or extraction failed: relation rank deficient");
  auto forms = reduce_tuple(kernel_minors(chosen), std::optional<Ideal<F>>());
  return RationalMap<F>(source_ring, target_ring, forms);
}

template <class F>
bool proportional(const std::vector<Polynomial<F>>& a, const std::vector<Polynomial<F>>& b,
                  const std::optional<Ideal<F>>& domain) {
  if (a.size() != b.size()) return false;
  std::vector<Poly<F>> ra, rb;
  bool any_a = false, any_b = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ra.push_back(reduce_mod(a[i], domain));
    rb.push_back(reduce_mod(b[i], domain));
    any_a = any_a || !ra.back().is_zero();
    any_b = any_b || !rb.back().is_zero();
  }
  if (!any_a || !any_b) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (!reduce_mod(ra[i] * rb[j] - ra[j] * rb[i], domain).is_zero()) return false;
    }
  }
  return true;
}

template <class F>
bool proportional_to_identity(const std::vector<Polynomial<F>>& forms, const std::optional<Ideal<F>>& domain) {
  if (forms.empty()) return false;
  const auto& ring = forms.front().ring();
  return proportional(forms, variables(ring, 0, ring->nvars()), domain);
}

template <class F>
bool round_trip(const RationalMap<F>& map, const RationalMap<F>& inverse) {
  // Proportionality survives a common factor, so the composites are not gcd-reduced.
  auto raw = [](const RationalMap<F>& outer, const RationalMap<F>& inner) {
    std::vector<Poly<F>> forms;
    for (const auto& f : outer.forms) forms.push_back(substitute(f, inner.forms, inner.source));
    return forms;
  };
  return proportional_to_identity(raw(inverse, map), map.domain) &&
         proportional_to_identity(raw(map, inverse), inverse.domain);
}

template <class F>
RationalMap<F> invert_birational(const RationalMap<F>& map, Rng& rng) {
  auto inverse = inverse_from_relations(graph_linear_relations(map), map.target, map.source, rng);
  if (!round_trip(map, inverse)) throw AlgebraError("map not birational or extraction failed: round trip");
  return inverse;
}

template <class F>
Ideal<F> base_locus(const RationalMap<F>& map) {
  std::vector<Poly<F>> gens = map.forms;
  if (map.domain) {
    for (const auto& g : map.domain->generators()) gens.push_back(g);
  }
  return saturate_irrelevant(Ideal<F>(map.source, gens));
}

template <class F>
Ideal<F> singular_locus(const Variety<F>& v) {
  const auto& ring = v.ring();
  if (v.is_empty()) return Ideal<F>::unit(ring);
  int c = ring->nvars() - 1 - v.dimension();
  if (c == 0) return Ideal<F>::unit(ring);
  std::vector<Poly<F>> gens;
  for (const auto& g : v.ideal().generators()) {
    if (!g.is_zero()) gens.push_back(g);
  }
  auto all = gens;
  for (const auto& m : minors(jacobian(gens), c)) {
    if (!m.is_zero()) all.push_back(m);
  }
  Ideal<F> sing(ring, all);
  if (hilbert(sing).dimension < 0) return Ideal<F>::unit(ring);
  return saturate_irrelevant(sing);
}

template <class F>
long multiplicity_at_point(const Variety<F>& curve, const Vec<F>& point, Rng& rng, int planes) {
  if (curve.dimension() != 1) throw AlgebraError("multiplicity_at_point expects a curve");
  const auto& ring = curve.ring();
  auto m_pt = point_ideal(ring, point);
  for (const auto& g : curve.ideal().generators()) {
    if (!ring->field().is_zero(g.evaluate(point))) throw AlgebraError("point does not lie on the curve");
  }
  long best = -1;
  for (int attempt = 0; attempt < planes; ++attempt) {
    auto plane = random_form_through(ring, point, rng);
    auto section = sum(curve.ideal(), Ideal<F>(ring, {plane}));
    if (hilbert(section).dimension != 0) continue;
    long total = zero_dim_length(section);
    long away = zero_dim_length(saturate(section, m_pt));
    long local = total - away;
    if (best < 0 || local < best) best = local;
  }
  if (best < 0) throw AlgebraError("no transversal plane found through the point");
  return best;
}

template <class F>
Variety<F> cone_from_point(const Variety<F>& v, const Vec<F>& vertex) {
  const auto& ring = v.ring();
  auto [to_new, to_old] = move_point_to_first(ring, vertex);
  auto moved = map_ideal(v.ideal(), to_new, ring);
  auto cone = map_ideal(eliminate(moved, 1), to_old, ring);
  return Variety<F>::saturating(cone);
}

template <class F>
bool contains_neighborhood(const Ideal<F>& I, const Ideal<F>& sub, int k) {
  if (k < 0) throw AlgebraError("neighbourhood order must be nonnegative");
  return power(sub, static_cast<unsigned>(k + 1)).contains(I);
}

template <class F>
Polynomial<F> tangent_cone_at_point(const Polynomial<F>& f, const Vec<F>& point) {
  const auto& ring = f.ring();
  if (!ring->field().is_zero(f.evaluate(point))) throw AlgebraError("point does not lie on the hypersurface");
  auto [to_new, to_old] = move_point_to_first(ring, point);
  auto moved = substitute(f, to_new, ring);
  unsigned low = ~0u;
  for (const auto& t : moved.terms()) low = std::min(low, t.m.deg - t.m.e[0]);
  std::vector<Term<F>> lowest;
  for (const auto& t : moved.terms()) {
    if (t.m.deg - t.m.e[0] != low) continue;
    auto m = t.m;
    m.e[0] = 0;
    m.recompute();
    lowest.push_back({m, t.c});
  }
  return substitute(Poly<F>::from_terms(ring, std::move(lowest)), to_old, ring);
}

namespace {

// Initial forms at the point of a basis of I, in coordinates moving the point to
// (1:0:...:0); the forms avoid the first variable.
template <class F>
std::pair<std::vector<Poly<F>>, std::vector<Poly<F>>> initial_forms_at(const Ideal<F>& I, const Vec<F>& point) {
  const auto& ring = I.ring();
  int n = ring->nvars();
  auto [to_new, to_old] = move_point_to_first(ring, point);
  auto moved = saturate_linear(map_ideal(I, to_new, ring), var(ring, 0));
  std::vector<int> weights(n, 1);
  weights[0] = 2;
  auto basis = moved.groebner(MonomialOrder::grevlex(weights));
  std::vector<Poly<F>> initial;
  for (const auto& g : basis->elements) {
    unsigned top = 0;
    for (const auto& t : g.terms()) top = std::max<unsigned>(top, t.m.e[0]);
    std::vector<Term<F>> part;
    for (const auto& t : g.terms()) {
      if (t.m.e[0] != top) continue;
      auto m = t.m;
      m.e[0] = 0;
      m.recompute();
      part.push_back({m, t.c});
    }
    initial.push_back(Poly<F>::from_terms(ring, std::move(part)));
  }
  return {initial, to_old};
}

}  // namespace

template <class F>
Ideal<F> tangent_cone_ideal(const Ideal<F>& I, const Vec<F>& point) {
  auto [initial, to_old] = initial_forms_at(I, point);
  return map_ideal(Ideal<F>(I.ring(), initial), to_old, I.ring());
}

template <class F>
Ideal<F> tangent_directions(const Ideal<F>& I, const Vec<F>& point) {
  const auto& ring = I.ring();
  int n = ring->nvars();
  auto [initial, to_old] = initial_forms_at(I, point);
  auto directions = projective_space(ring->field(), n - 2, "d");
  std::vector<Poly<F>> images{Poly<F>(directions)};
  for (int i = 0; i + 1 < n; ++i) images.push_back(var(directions, i));
  return map_ideal(Ideal<F>(ring, initial), images, directions);
}

template <class F>
bool zero_dim_reduced(const Ideal<F>& I, Rng& rng) {
  const auto& ring = I.ring();
  const F& k = ring->field();
  int n = ring->nvars();
  long length = zero_dim_length(I);
  if (length == 0) return true;
  Mat<F> change;
  for (;;) {
    change.clear();
    for (int i = 0; i < n; ++i) change.push_back(random_vector(k, n, rng));
    if (rank(k, change) == n) break;
  }
  // After a general change of coordinates the eliminant in the last two variables
  // is a binary form whose roots are the projected points.
  auto moved = map_ideal(I, linear_substitution(ring, change), ring);
  auto binary = eliminate(moved, n - 2);
  Poly<F> form;
  auto reduced = binary.reduced();
  for (const auto& g : reduced.generators()) {
    if (!g.is_zero() && (form.ring() == nullptr || g.total_degree() < form.total_degree())) form = g;
  }
  if (form.ring() == nullptr || form.total_degree() != length) return false;
  auto common = gcd(form.derivative(n - 2), form.derivative(n - 1));
  return common.is_constant();
}

template <class F>
std::string map_to_text(const RationalMap<F>& map) {
  std::ostringstream out;
  out << map.source->describe() << "\n";
  for (const auto& f : map.forms) out << f.to_string() << "\n";
  return out.str();
}

#define BIRAT_INSTANTIATE(F)                                                                                   \
  template class LinearSubspace<F>;                                                                            \
  template class Variety<F>;                                                                                   \
  template struct RationalMap<F>;                                                                              \
  template RingPtr<F> projective_space(const F&, int, const std::string&);                                     \
  template RationalMap<F> identity_map(const RingPtr<F>&);                                                     \
  template Ideal<F> point_ideal(const RingPtr<F>&, const Vec<F>&);                                             \
  template std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_point_to_first(              \
      const RingPtr<F>&, const Vec<F>&);                                                                       \
  template SegreData<F> segre_embed(const F&, int, int);                                                       \
  template RationalMap<F> linear_projection(const LinearSubspace<F>&, const std::string&);                     \
  template std::vector<Polynomial<F>> reduce_tuple(std::vector<Polynomial<F>>, const std::optional<Ideal<F>>&); \
  template RationalMap<F> compose(const RationalMap<F>&, const RationalMap<F>&);                               \
  template Variety<F> image_closure(const RationalMap<F>&);                                                    \
  template Ideal<F> implicitize(const RationalMap<F>&, int);                                                   \
  template LinearRelations<F> graph_linear_relations(const RationalMap<F>&);                                   \
  template RationalMap<F> inverse_from_relations(const LinearRelations<F>&, const RingPtr<F>&,                 \
                                                 const RingPtr<F>&, Rng&);                                     \
  template RationalMap<F> invert_birational(const RationalMap<F>&, Rng&);                                      \
  template bool proportional_to_identity(const std::vector<Polynomial<F>>&, const std::optional<Ideal<F>>&);   \
  template bool proportional(const std::vector<Polynomial<F>>&, const std::vector<Polynomial<F>>&,             \
                             const std::optional<Ideal<F>>&);                                                  \
  template bool round_trip(const RationalMap<F>&, const RationalMap<F>&);                                      \
  template Ideal<F> base_locus(const RationalMap<F>&);                                                         \
  template Ideal<F> singular_locus(const Variety<F>&);                                                         \
  template long multiplicity_at_point(const Variety<F>&, const Vec<F>&, Rng&, int);                            \
  template Variety<F> cone_from_point(const Variety<F>&, const Vec<F>&);                                       \
  template bool contains_neighborhood(const Ideal<F>&, const Ideal<F>&, int);                                  \
  template Polynomial<F> tangent_cone_at_point(const Polynomial<F>&, const Vec<F>&);                           \
  template Ideal<F> tangent_cone_ideal(const Ideal<F>&, const Vec<F>&);                                        \
  template Ideal<F> tangent_directions(const Ideal<F>&, const Vec<F>&);                                        \
  template bool zero_dim_reduced(const Ideal<F>&, Rng&);                                                       \
  template std::string map_to_text(const RationalMap<F>&);

BIRAT_INSTANTIATE(PrimeField)
BIRAT_INSTANTIATE(RationalField)

}  // namespace birat
