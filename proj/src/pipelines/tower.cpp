#include "birat/pipelines/tower.hpp"

#include <map>

namespace birat {

namespace {

PolyP var(const RingPtr<Fp>& r, int i) { return PolyP::variable(r, i); }

PolyP random_linear(const RingPtr<Fp>& r, Rng& rng) {
  return linear_form(r, random_vector(r->field(), r->nvars(), rng));
}

PolyP random_form_through(const RingPtr<Fp>& r, const Vec<Fp>& pt, Rng& rng) {
  const Fp& k = r->field();
  auto c = random_vector(k, r->nvars(), rng);
  Fp::Element s = k.zero();
  for (std::size_t i = 0; i < c.size(); ++i) s = k.add(s, k.mul(c[i], pt[i]));
  std::size_t j = 0;
  while (k.is_zero(pt[j])) ++j;
  c[j] = k.sub(c[j], k.mul(s, k.inv(pt[j])));
  return linear_form(r, c);
}

bool same_up_to_scalar(const PolyP& a, const PolyP& b) { return !a.is_zero() && a.monic() == b.monic(); }

// The cone with vertex (0:0:0:1) over a subscheme of the plane w3 = 0.
IdealP cone_over_plane(const IdealP& I, const RingPtr<Fp>& p3) {
  return map_ideal(I, {var(p3, 0), var(p3, 1), var(p3, 2)}, p3);
}

std::vector<PolyP> compose_forms(const std::vector<PolyP>& forms, const std::vector<PolyP>& images,
                                 const RingPtr<Fp>& target) {
  std::vector<PolyP> out;
  for (const auto& f : forms) out.push_back(substitute(f, images, target));
  return out;
}

// form(map) reduced modulo the map's domain, multiplying one factor at a time.
PolyP compose_reduced(const PolyP& form, const MapP& map) {
  auto basis = map.domain->groebner();
  auto reduce = [&](const PolyP& p) { return basis->reduce(p).in_ring(p.ring()); };
  std::vector<PolyP> images;
  for (const auto& f : map.forms) images.push_back(reduce(f));
  struct Less {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.e < b.e; }
  };
  std::map<Monomial, PolyP, Less> memo;
  std::function<PolyP(const Monomial&)> value = [&](const Monomial& m) -> PolyP {
    if (m.is_one()) return PolyP::constant(map.source, 1LL);
    auto it = memo.find(m);
    if (it != memo.end()) return it->second;
    int j = 0;
    while (m.e[j] == 0) ++j;
    auto v = reduce(value(m / Monomial::variable(j)) * images[j]);
    memo.emplace(m, v);
    return v;
  };
  PolyP total(map.source);
  for (const auto& t : form.terms()) total += value(t.m).scale(t.c);
  return reduce(total);
}

template <class Fn>
void guarded(Report& report, const std::string& id, const std::string& claim, const std::string& anchor, Fn fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    report.fail(id, claim, anchor, e.what());
  }
}

Vec<Fp> point_of(const IdealP& linear_point) {
  Mat<Fp> rows;
  for (const auto& g : linear_point.generators()) rows.push_back(linear_coefficients(g));
  auto ns = nullspace(linear_point.ring()->field(), rows, linear_point.ring()->nvars());
  if (ns.size() != 1) throw AlgebraError("ideal is not a linear point");
  return ns[0];
}

// The Lambda-dependent part of the tower: curve section, Gamma and the
// transversality assumptions. Throws DegenerateDraw to ask for a new Lambda.
void draw_section(ConstructionState& st, Rng& rng, const TowerOptions& opts) {
  const auto& inst = *st.inst;
  const Fp& k = inst.field;
  if (opts.line_in_lambda) {
    auto line = LinearSubspace<Fp>::from_points(inst.ambient, *opts.line_in_lambda);
    std::vector<PolyP> combos;
    for (int i = 0; i < 2; ++i) {
      PolyP e(inst.ambient);
      for (const auto& f : line.forms()) e += f.scale(random_scalar(k, rng));
      combos.push_back(e);
    }
    st.l1 = combos[0];
    st.l2 = combos[1];
  } else {
    st.l1 = random_linear(inst.ambient, rng);
    st.l2 = random_linear(inst.ambient, rng);
  }
  st.lambda = LinearSubspace<Fp>::from_forms(inst.ambient, {st.l1, st.l2});
  st.section_ring = projective_space(k, 3, "t");
  st.param = st.lambda.parametrization(st.section_ring);
  auto reduced = inst.ideal.reduced();
  st.C = saturate_irrelevant(IdealP(st.section_ring, compose_forms(reduced.generators(), st.param, st.section_ring)));
  st.C_hilbert = hilbert(st.C);
  if (st.C_hilbert.dimension != 1) throw DegenerateDraw("curve section is not a curve");
  if (!opts.line_in_lambda && !singular_locus(Variety<Fp>(st.C)).is_unit()) {
    throw DegenerateDraw("curve section is singular");
  }
  auto hc = compose_forms(inst.h.forms, st.param, st.section_ring);
  st.gamma = image_closure(MapP(st.section_ring, inst.plane, hc, st.C));
  st.n = st.gamma.degree();
  auto uc = compose_forms(inst.u.forms, st.param, st.section_ring);
  st.uC = inst.base == inst.plane ? st.gamma.ideal()
                                  : image_closure(MapP(st.section_ring, inst.base, uc, st.C)).ideal();

  if (inst.exceptional.empty()) return;
  std::vector<IdealP> images;
  std::int64_t total = 0;
  for (const auto& e : inst.exceptional) {
    auto preimage = e.preimage.reduced();
    auto meet = saturate_irrelevant(IdealP(st.section_ring, compose_forms(preimage.generators(), st.param, st.section_ring)));
    if (hilbert(meet).dimension != 0) throw DegenerateDraw("curve section meets an exceptional divisor in a curve");
    long points = zero_dim_length(meet);
    if (points != e.preimage_degree) throw DegenerateDraw("C . E_i differs from deg E_i");
    auto image = saturate_irrelevant(image_closure(MapP(st.section_ring, inst.base, uc, meet)).ideal());
    if (zero_dim_length(image) != points) throw DegenerateDraw("points of C on E_i share a scroll line");
    images.push_back(image);
    total += points;
  }
  auto all = saturate_irrelevant(intersect(images));
  if (zero_dim_length(all) != total) throw DegenerateDraw("scroll lines through C . E_i coincide");
  auto lines = scroll_preimage(inst, all, rng);
  auto on_h = saturate_irrelevant(sum(lines, IdealP(inst.ambient, {st.l2})));
  if (hilbert(on_h).dimension != 0 || zero_dim_length(on_h) != total) {
    throw DegenerateDraw("the E1 hyperplane contains a scroll line through C . E_i");
  }
}

}  // namespace

ConstructionState construct_g(const ScrollInstance& inst, Rng& rng, Report& report, const TowerOptions& opts) {
  ConstructionState st;
  st.inst = &inst;
  const Fp& k = inst.field;
  {
    PhaseTimer timer(report, "segre");
    st.segre = segre_embed(k, 2, 1);
  }
  auto z = st.segre.target;
  auto zij = [&](int i, int j) { return var(z, i * 2 + j); };
  auto L = LinearSubspace<Fp>::from_forms(z, {zij(0, 1), zij(1, 1), zij(2, 1), zij(2, 0)});
  st.pi_L = linear_projection(L, "w");
  st.p3 = st.pi_L.target;
  auto product = st.segre.product;
  auto F1 = image_closure(st.segre.map.restricted(IdealP(product, {var(product, 4)}))).ideal();
  auto F2 = image_closure(st.segre.map.restricted(IdealP(product, {var(product, 2)}))).ideal();
  auto P_ideal = saturate_irrelevant(image_closure(st.pi_L.restricted(F1)).ideal());
  st.B1 = saturate_irrelevant(image_closure(st.pi_L.restricted(F2)).ideal());
  st.P = point_of(P_ideal);
  st.mP = point_ideal(st.p3, st.P);
  report.expect_true("tower.L_is_F1_meet_F2", "L = F1 . F2 on the Segre threefold", "center L of the projection",
                     saturate_irrelevant(sum(F1, F2)).equals(L.ideal()));
  report.expect("tower.P_point", "pi_L contracts F1 to a point P", "P = pi_L(F1)", 0,
                hilbert(P_ideal).dimension);
  auto b1 = hilbert(st.B1);
  report.expect("tower.B1_line", "pi_L maps F2 onto a line B1", "B1 = pi_L(F2)", Json{{"dim", 1}, {"deg", 1}},
                Json{{"dim", b1.dimension}, {"deg", b1.degree}});
  report.expect_true("tower.P_not_on_B1", "P does not lie on B1", "P off the line B1",
                     saturate_irrelevant(sum(st.B1, st.mP)).is_unit());

  bool drawn = false;
  for (int attempt = 0; attempt < opts.retries && !drawn; ++attempt) {
    PhaseTimer timer(report, "section");
    try {
      draw_section(st, rng, opts);
      drawn = true;
    } catch (const DegenerateDraw& e) {
      report.log("tower: Lambda draw " + std::to_string(attempt) + " rejected: " + e.what());
    }
  }
  if (!drawn) throw std::runtime_error("no Lambda meeting the genericity conditions within the retry budget");

  std::string tag = inst.name;
  if (!opts.line_in_lambda) {
    report.expect(tag + ".C_degree", "deg C = d", "C is a curve section", inst.degree, st.C_hilbert.degree);
    report.expect_true(tag + ".C_smooth", "C is smooth, hence misses Sing X", "C smooth and off Sing X", true);
  }
  report.record("sectional_genus", st.C_hilbert.arithmetic_genus());
  report.record("n", st.n);
  report.record("Gamma_hilbert_polynomial", st.gamma.hilbert().polynomial_string());
  if (!inst.exceptional.empty()) {
    report.expect_true(tag + ".transversality", "C . E_i are distinct points on distinct lines, none inside H",
                       "transversality assumptions", true);
  }

  // alpha = (h, pi_Lambda) in Segre coordinates z_ij = h_i y_j with y = (l1, l2).
  std::vector<PolyP> alpha_forms;
  for (int i = 0; i < 3; ++i) {
    alpha_forms.push_back(inst.h.forms[i] * st.l1);
    alpha_forms.push_back(inst.h.forms[i] * st.l2);
  }
  st.alpha = MapP(inst.ambient, z, alpha_forms, inst.ideal);
  {
    PhaseTimer timer(report, "g");
    st.g = compose(st.pi_L, st.alpha);
  }
  report.record("g_degree", st.g.degree());
  report.expect("tower.g_degree", "g is given by forms of degree deg h + 1", "g = pi_L o alpha",
                inst.h.degree() + 1, st.g.degree());

  // E1 = X . {l2 = 0} is contracted by g to P.
  guarded(report, tag + ".E1_hyperplane_section", "E1 is a hyperplane section contracted to P",
          "E1 hyperplane section", [&] {
            IdealP E1 = saturate_irrelevant(sum(inst.ideal, IdealP(inst.ambient, {st.l2})));
            auto hp = hilbert(E1);
            bool contracted = true;
            auto basis = E1.groebner();
            for (std::size_t i = 0; i < st.g.forms.size(); ++i) {
              bool vanishes = basis->contains(st.g.forms[i]);
              contracted = contracted && (vanishes == k.is_zero(st.P[i]));
            }
            report.expect(tag + ".E1_hyperplane_section", "E1 is a hyperplane section contracted to P",
                          "E1 hyperplane section", Json{{"dim", 2}, {"deg", inst.degree}, {"contracted_to_P", true}},
                          Json{{"dim", hp.dimension}, {"deg", hp.degree}, {"contracted_to_P", contracted}});
          });
  return st;
}

void compute_sigma(ConstructionState& st, Rng& rng, Report& report, const TowerOptions& opts) {
  const auto& inst = *st.inst;
  const Fp& k = inst.field;
  std::string tag = inst.name;
  auto p3 = st.p3;
  auto w = [&](int i) { return var(p3, i); };
  auto lam = compose_forms(inst.v_inverse.forms, {w(0), w(1), w(2)}, p3);
  int nx = inst.ambient->nvars();
  LinearRelations<Fp> rows;
  for (int r = 0; r < nx - 2; ++r) {
    std::vector<PolyP> row(nx, PolyP(p3));
    for (const auto& rel : inst.fiber_relations) {
      auto c = random_scalar(k, rng);
      for (int j = 0; j < nx; ++j) row[j] += substitute(rel[j], lam, p3).scale(c);
    }
    rows.push_back(std::move(row));
  }
  auto a = linear_coefficients(st.l1), b = linear_coefficients(st.l2);
  std::vector<PolyP> hyper;
  for (int j = 0; j < nx; ++j) hyper.push_back(w(2).scale(a[j]) - w(3).scale(b[j]));
  rows.push_back(hyper);
  {
    PhaseTimer timer(report, "inverse");
    st.f = MapP(p3, inst.ambient, reduce_tuple(kernel_minors(rows), std::optional<IdealP>()));
  }
  report.record("deg_sigma", st.f.degree());
  report.artifact("f", map_to_text(st.f));
  report.expect(tag + ".deg_sigma", "the forms of |Sigma| have degree n + 1", "monoids of degree n+1", st.n + 1,
                st.f.degree());
  report.expect("tower.sigma_independent", "the forms of |Sigma| are linearly independent",
                "linear system of dimension r", nx,
                rank(k, coefficient_matrix(st.f.forms).rows));

  PhaseTimer timer(report, "certify inverse");
  auto reduced = inst.ideal.reduced();
  bool into_x = true;
  for (const auto& q : reduced.generators()) into_x = into_x && substitute(q, st.f.forms, p3).is_zero();
  bool fiber = proportional(compose_forms(inst.u.forms, st.f.forms, p3), lam);
  PolyP hyper_value = substitute(st.l1, st.f.forms, p3) * w(2) - substitute(st.l2, st.f.forms, p3) * w(3);
  report.expect_true("tower.f_into_X", "f maps P3 into X", "f = g^-1", into_x);
  report.expect_true("tower.f_on_scroll_lines", "u o f = v^-1 on the first three coordinates", "f = g^-1", fiber);
  report.expect_true("tower.f_on_hyperplanes", "f(w) lies on the hyperplane w2 l1 = w3 l2 through Lambda",
                     "f = g^-1", hyper_value.is_zero());
  if (opts.full_round_trip) {
    guarded(report, "tower.round_trip", "g o f and f o g are identities", "round trip", [&] {
      report.expect_true("tower.round_trip", "g o f and f o g are identities", "round trip",
                         round_trip(st.g, st.f));
    });
  }
  if (opts.graph_inverse) {
    guarded(report, "tower.graph_inverse", "the inverse from the graph of g equals f", "f = g^-1", [&] {
      auto from_graph = invert_birational(st.g, rng);
      report.expect_true("tower.graph_inverse", "the inverse from the graph of g equals f", "f = g^-1",
                         proportional(from_graph.forms, st.f.forms));
    });
  }
}

void analyze_sigma(ConstructionState& st, Rng& rng, Report& report, const TowerOptions& opts) {
  const auto& inst = *st.inst;
  auto p3 = st.p3;
  std::string tag = inst.name;
  {
    PhaseTimer timer(report, "base locus");
    st.base = base_locus(st.f);
  }
  auto base_hp = hilbert(st.base);
  report.record("base_hilbert_polynomial", base_hp.polynomial_string());
  report.record("base_arithmetic_genus", base_hp.arithmetic_genus());
  report.artifact("base", ideal_to_text(st.base));

  st.Bi.clear();
  for (const auto& e : inst.exceptional) st.Bi.push_back(saturate_irrelevant(cone_over_plane(e.image, p3)));

  {
    PhaseTimer timer(report, "E_inf");
    st.E_inf = scroll_preimage(inst, st.uC, rng);
  }
  auto e_hp = hilbert(st.E_inf);
  st.deg_E_inf = e_hp.degree;
  report.record("deg_E_inf", st.deg_E_inf);
  report.expect(tag + ".E_inf_surface", "E_inf = u^-1(u(C)) is a surface", "E_inf ruled surface", 2,
                e_hp.dimension);

  {
    PhaseTimer timer(report, "B2 residual");
    IdealP rest = saturate(st.base, st.B1);
    for (const auto& b : st.Bi) rest = saturate(rest, b);
    st.B2 = saturate(rest, st.mP);
  }
  auto b2 = hilbert(st.B2);
  st.deg_B2 = b2.degree;
  report.record("deg_B2", b2.degree);
  report.record("pa_B2", b2.arithmetic_genus());
  report.record("B2_hilbert_polynomial", b2.polynomial_string());
  report.artifact("B2", ideal_to_text(st.B2));
  report.expect(tag + ".B2_curve", "B2 is a curve", "B2 one-dimensional component", 1, b2.dimension);

  if (opts.b2_image_degree > 0) {
    guarded(report, tag + ".B2_image_route", "B2 = g(E_inf)", "B2 = g(E_inf)", [&] {
      PhaseTimer timer(report, "B2 image");
      auto gens = st.E_inf.generators();
      gens.push_back(random_linear(inst.ambient, rng));
      auto image = saturate_irrelevant(implicitize(st.g.restricted(IdealP(inst.ambient, gens)), opts.b2_image_degree));
      report.expect_true(tag + ".B2_image_route", "B2 from the residual equals g(E_inf)", "B2 = g(E_inf)",
                         image.equals(st.B2));
    });
  }

  // (i) components of the base scheme.
  guarded(report, tag + ".components", "base scheme components", "one-dimensional components", [&] {
    PhaseTimer timer(report, "components");
    bool inside = st.B1.contains(st.base) && st.B2.contains(st.base) && st.mP.contains(st.base);
    for (const auto& b : st.Bi) inside = inside && b.contains(st.base);
    report.expect_true(tag + ".components_contain_base", "B lies in B1, B2, every B_i and P",
                       "one-dimensional components", inside);
    IdealP rest = saturate(st.base, st.B1);
    for (const auto& b : st.Bi) rest = saturate(rest, b);
    rest = saturate(saturate(rest, st.B2), st.mP);
    report.expect_true(tag + ".no_other_components", "no component beyond B1, B_i, B2 and P",
                       "one-dimensional components", rest.is_unit());
    IdealP top = saturate(st.base, st.mP);
    auto top_hp = hilbert(top);
    report.expect(tag + ".top_pure_curve", "the top part is a curve", "pure codimension-2 top part", 1,
                  top_hp.dimension);
    std::int64_t expected = 1 + st.deg_B2;
    for (const auto& e : inst.exceptional) expected += e.components * e.delta * (e.delta + 1) / 2;
    report.expect(tag + ".top_degree", "deg of the top part = deg B1 + deg B2 + sum of neighbourhood degrees",
                  "one-dimensional components", expected, top_hp.degree);
    auto mPn = power(st.mP, static_cast<unsigned>(st.n));
    bool embedded = st.base.equals(intersect(top, mPn));
    report.expect_true(tag + ".embedded_point", "B = top part . m_P^n", "embedded point structure", embedded);
    report.record("top_contained_in_mP_n", mPn.contains(top));
  });

  // (ii) intersection lengths.
  guarded(report, tag + ".B1_B2", "B1 . B2 = n", "B2 meets B1 in n points", [&] {
    long len = zero_dim_length(saturate_irrelevant(sum(st.B1, st.B2)));
    report.record("B1_dot_B2", len);
    report.expect(tag + ".B1_B2", "B1 . B2 = n", "B2 meets B1 in n points", st.n, len);
  });
  for (std::size_t i = 0; i < st.Bi.size(); ++i) {
    const auto& e = inst.exceptional[i];
    std::string id = tag + ".B" + std::to_string(i + 3);
    guarded(report, id + "_secant", "B2 . B_i = delta_i away from P", "B2 delta_i-secant to B_i", [&] {
      long away = zero_dim_length(saturate(saturate_irrelevant(sum(st.B2, st.Bi[i])), st.mP));
      long b1 = zero_dim_length(saturate_irrelevant(sum(st.B1, st.Bi[i])));
      report.record(id + "_dot_B2", away);
      report.record(id + "_dot_B1", b1);
      report.expect(id + "_secant", "B2 . B_i = delta_i away from P", "B2 delta_i-secant to B_i",
                    e.delta * e.components, away);
    });
    guarded(report, id + "_image", "g(E_i) = B_i", "B_i = g(E_i)", [&] {
      bool inside = true;
      auto restricted = st.g.restricted(e.preimage);
      for (const auto& gen : st.Bi[i].generators()) inside = inside && compose_reduced(gen, restricted).is_zero();
      report.expect_true(id + "_image", "g maps E_i into the lines over v(Delta_i)", "B_i = g(E_i)", inside);
    });
  }

  // (iii) B2 degree, genus, multiplicity.
  guarded(report, tag + ".B2_degree_formula", "deg B2 = deg E_inf - d + n", "degree of B2", [&] {
    report.expect(tag + ".B2_degree_formula", "deg B2 = deg E_inf - d + n", "degree of B2",
                  st.deg_E_inf - inst.degree + st.n, st.deg_B2);
  });
  guarded(report, tag + ".mult_P", "mult_P B2 = deg E_inf - d", "multiplicity of B2 at P", [&] {
    PhaseTimer timer(report, "multiplicity");
    st.mult_P = multiplicity_at_point(Variety<Fp>(st.B2), st.P, rng);
    report.record("mult_P_B2", st.mult_P);
    report.expect(tag + ".mult_P", "mult_P B2 = deg E_inf - d", "multiplicity of B2 at P",
                  st.deg_E_inf - inst.degree, st.mult_P);
  });
  guarded(report, tag + ".bezout_plane", "a plane through P meets B2 in deg B2, mult_P at P", "Bezout", [&] {
    auto plane = IdealP(p3, {random_form_through(p3, st.P, rng)});
    auto section = saturate_irrelevant(sum(st.B2, plane));
    long total = zero_dim_length(section);
    long away = zero_dim_length(saturate(section, st.mP));
    report.expect(tag + ".bezout_plane", "a plane through P meets B2 in deg B2, mult_P at P", "Bezout",
                  Json{{"total", st.deg_B2}, {"at_P", st.mult_P}}, Json{{"total", total}, {"at_P", total - away}});
  });
  guarded(report, tag + ".tangents_distinct", "the tangent lines of B2 at P are distinct", "distinct tangents", [&] {
    PhaseTimer timer(report, "tangent directions");
    auto dirs = tangent_directions(st.B2, st.P);
    long len = zero_dim_length(dirs);
    bool reduced = zero_dim_reduced(dirs, rng);
    report.expect(tag + ".tangents_distinct", "the tangent cone of B2 at P is mult_P distinct lines",
                  "distinct tangents", Json{{"length", st.mult_P}, {"reduced", true}},
                  Json{{"length", len}, {"reduced", reduced}});
  });
  report.skip(tag + ".branches_smooth", "branches of B2 at P are nonsingular", "smooth branches",
              "needs local analytic data; not checked");
  if (st.C_hilbert.arithmetic_genus() > 0) {
    guarded(report, tag + ".B2_smooth_off_P", "B2 is smooth outside P", "B2 smooth off P", [&] {
      PhaseTimer timer(report, "B2 singular locus");
      auto sing = singular_locus(Variety<Fp>(st.B2));
      report.expect_true(tag + ".B2_smooth_off_P", "B2 is smooth outside P", "B2 smooth off P",
                         saturate(sing, st.mP).is_unit());
    });
  }

  // (iv) monoids and the tangent cone at P.
  guarded(report, tag + ".monoid", "every Sigma has multiplicity n at P", "monoids with n-ple point P", [&] {
    auto mPn = power(st.mP, static_cast<unsigned>(st.n));
    auto mPn1 = power(st.mP, static_cast<unsigned>(st.n + 1));
    bool all_in = true, some_out = false;
    for (const auto& f : st.f.forms) {
      all_in = all_in && mPn.contains(f);
      some_out = some_out || !mPn1.contains(f);
    }
    report.expect(tag + ".monoid", "every Sigma has multiplicity n at P", "monoids with n-ple point P",
                  Json{{"in_mP_n", true}, {"not_all_in_mP_n+1", true}},
                  Json{{"in_mP_n", all_in}, {"not_all_in_mP_n+1", some_out}});
  });
  guarded(report, tag + ".tangent_cone", "tangent cone of Sigma at P is the cone over h(C1)", "tangent cone", [&] {
    PhaseTimer timer(report, "tangent cone");
    const Fp& k = inst.field;
    auto c = random_vector(k, inst.ambient->nvars(), rng);
    PolyP sigma(p3);
    for (std::size_t i = 0; i < c.size(); ++i) sigma += st.f.forms[i].scale(c[i]);
    auto cone = tangent_cone_at_point(sigma, st.P);
    auto sub = LinearSubspace<Fp>::from_forms(inst.ambient, {linear_form(inst.ambient, c), st.l2});
    auto param = sub.parametrization(st.section_ring);
    auto reduced = inst.ideal.reduced();
    auto C1 = saturate_irrelevant(IdealP(st.section_ring, compose_forms(reduced.generators(), param, st.section_ring)));
    auto image = image_closure(MapP(st.section_ring, inst.plane, compose_forms(inst.h.forms, param, st.section_ring), C1));
    auto gens = image.ideal().generators();
    bool match = gens.size() == 1 && same_up_to_scalar(cone, cone_over_plane(image.ideal(), p3).generators()[0]);
    report.expect(tag + ".tangent_cone", "tangent cone of Sigma at P is the cone over h(C1)", "tangent cone",
                  Json{{"degree", st.n}, {"equal", true}}, Json{{"degree", cone.total_degree()}, {"equal", match}});
  });

  // (v) infinitesimal neighbourhoods of the B_i.
  for (std::size_t i = 0; i < st.Bi.size(); ++i) {
    const auto& e = inst.exceptional[i];
    std::string id = tag + ".B" + std::to_string(i + 3) + "_neighbourhood";
    guarded(report, id, "B contains the (delta_i - 1)-th neighbourhood of B_i", "infinitesimal neighbourhood", [&] {
      bool ok;
      if (e.components == 1) {
        ok = contains_neighborhood(st.base, st.Bi[i], static_cast<int>(e.delta - 1));
      } else {
        // Several lines through P: the symbolic power, i.e. the power with its part at P removed.
        ok = saturate(power(st.Bi[i], static_cast<unsigned>(e.delta)), st.mP).contains(st.base);
      }
      report.expect_true(id, "B contains the (delta_i - 1)-th neighbourhood of B_i", "infinitesimal neighbourhood",
                         ok);
    });
  }

  if (opts.characteristic_curve) {
    guarded(report, tag + ".characteristic_curve", "free intersection of two Sigma meets B2, B1 in deg E_inf, deg E2",
            "characteristic curve law", [&] {
              PhaseTimer timer(report, "characteristic curve");
              const Fp& k = inst.field;
              std::vector<PolyP> two;
              for (int j = 0; j < 2; ++j) {
                PolyP s(p3);
                for (const auto& f : st.f.forms) s += f.scale(random_scalar(k, rng));
                two.push_back(s);
              }
              auto free = saturate(IdealP(p3, two), st.base);
              long with_b2 = zero_dim_length(saturate(saturate_irrelevant(sum(free, st.B2)), st.mP));
              long with_b1 = zero_dim_length(saturate_irrelevant(sum(free, st.B1)));
              // E2 = h^-1 of the line s2 = 0.
              auto line = IdealP(inst.plane, {var(inst.plane, 2)});
              auto on_base = inst.base == inst.plane
                                 ? line
                                 : saturate_irrelevant(sum(inst.base_ideal,
                                                           IdealP(inst.base, compose_forms(line.generators(),
                                                                                           inst.v.forms, inst.base))));
              long deg_e2 = hilbert(scroll_preimage(inst, on_base, rng)).degree;
              report.record("deg_E2", deg_e2);
              report.expect(tag + ".characteristic_curve", "free intersection meets B2 and B1 in deg E_inf and deg E2",
                            "characteristic curve law", Json{{"B2", st.deg_E_inf}, {"B1", deg_e2}},
                            Json{{"B2", with_b2}, {"B1", with_b1}});
            });
  }
}

void verify_split_surfaces(ConstructionState& st, Rng& rng, Report& report) {
  const auto& inst = *st.inst;
  std::string tag = inst.name;
  auto p3 = st.p3;
  guarded(report, tag + ".split_surfaces", "Sigma from a hyperplane through Lambda = Phi x plane through B1",
          "split members", [&] {
            PhaseTimer timer(report, "split surfaces");
            auto phi = cone_from_point(Variety<Fp>(st.B2), st.P);
            auto phi_gens = phi.ideal().generators();
            report.expect(tag + ".Phi_degree", "Phi is a cone of degree n", "cone Phi of degree n", st.n,
                          phi.degree());
            if (phi_gens.size() != 1) throw AlgebraError("cone over B2 is not a surface");
            const PolyP& phi_form = phi_gens[0];
            auto gamma_cone = cone_over_plane(st.gamma.ideal(), p3).generators();
            report.expect_true(tag + ".Phi_is_Gamma_cone", "Phi = pi_L(Gamma x P1)", "cone Phi",
                               gamma_cone.size() == 1 && same_up_to_scalar(gamma_cone[0], phi_form));
            const Fp& k = inst.field;
            auto a0 = random_scalar(k, rng), a1 = random_scalar(k, rng);
            auto H = linear_coefficients(st.l1.scale(a0) + st.l2.scale(a1));
            PolyP member(p3);
            for (std::size_t i = 0; i < H.size(); ++i) member += st.f.forms[i].scale(H[i]);
            auto [q, r] = divide(member, phi_form);
            bool plane_through_b1 = r.is_zero() && q.total_degree() == 1 && st.B1.contains(q);
            report.expect(tag + ".split_surfaces", "Sigma from a hyperplane through Lambda = Phi x plane through B1",
                          "split members", Json{{"remainder_zero", true}, {"plane_contains_B1", true}},
                          Json{{"remainder_zero", r.is_zero()}, {"plane_contains_B1", plane_through_b1}});
          });
}

}  // namespace birat
