#include "birat/pipelines/scroll.hpp"

#include <stdexcept>

namespace birat {

namespace {

PolyP var(const RingPtr<Fp>& r, int i) { return PolyP::variable(r, i); }

std::vector<PolyP> compose_forms(const std::vector<PolyP>& forms, const std::vector<PolyP>& images,
                                 const RingPtr<Fp>& target) {
  std::vector<PolyP> out;
  for (const auto& f : forms) out.push_back(substitute(f, images, target));
  return out;
}

PolyP random_linear(const RingPtr<Fp>& r, Rng& rng) {
  return linear_form(r, random_vector(r->field(), r->nvars(), rng));
}

PolyP row_combination(const PolyMat<Fp>& m, const Vec<Fp>& c, int col) {
  PolyP e(m[0][col].ring());
  for (std::size_t i = 0; i < m.size(); ++i) e += m[i][col].scale(c[i]);
  return e;
}

// sum_j rows[i][j](images) x_j for every row, in the ambient ring.
std::vector<PolyP> evaluate_relations(const ScrollInstance& inst, const std::vector<PolyP>& images) {
  std::vector<PolyP> out;
  for (const auto& row : inst.fiber_relations) {
    PolyP e(inst.ambient);
    for (std::size_t j = 0; j < row.size(); ++j) e += substitute(row[j], images, inst.ambient) * var(inst.ambient, j);
    out.push_back(e);
  }
  return out;
}

bool relations_vanish_on_u(const ScrollInstance& inst) {
  for (const auto& e : evaluate_relations(inst, inst.u.forms)) {
    if (!inst.ideal.contains(e)) return false;
  }
  return true;
}

// Fibers of u over random rational points of V are lines.
bool fibers_are_lines(const ScrollInstance& inst, Rng& rng, int count) {
  PolyP surface = inst.base_ideal.is_zero() ? PolyP(inst.base) : inst.base_ideal.generators().front();
  for (int i = 0; i < count; ++i) {
    Vec<Fp> pt;
    if (surface.is_zero()) {
      pt = random_vector(inst.field, inst.base->nvars(), rng);
    } else {
      auto found = rational_point_on_hypersurface(surface, rng);
      if (!found) return false;
      pt = *found;
    }
    auto fiber = saturate_irrelevant(sum(inst.ideal, fiber_over(inst, pt)));
    auto hp = hilbert(fiber);
    if (hp.dimension != 1 || hp.degree != 1 || hp.arithmetic_genus() != 0) return false;
  }
  return true;
}

// Rows sum_c x_c (sum_j coeff(M_ij, x_c) m_j) of M(x) m = 0 for a matrix of linear forms.
LinearRelations<Fp> linear_matrix_relations(const PolyMat<Fp>& M, const RingPtr<Fp>& base) {
  LinearRelations<Fp> rows;
  int nx = M[0][0].ring()->nvars();
  for (const auto& mrow : M) {
    std::vector<PolyP> row(nx, PolyP(base));
    for (std::size_t j = 0; j < mrow.size(); ++j) {
      auto c = linear_coefficients(mrow[j]);
      for (int x = 0; x < nx; ++x) row[x] += var(base, j).scale(c[x]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <class Draw>
ScrollInstance with_retries(const BuildOptions& opts, Report& report, const std::string& name, Draw draw) {
  Fp k(opts.prime);
  for (int attempt = 0; attempt < opts.retries; ++attempt) {
    std::uint64_t seed = opts.seed + attempt;
    Rng rng(seed);
    try {
      auto inst = draw(k, rng);
      inst.seed = seed;
      inst.mode = opts.mode;
      report.record(name + ".seed_used", seed);
      return inst;
    } catch (const DegenerateDraw& e) {
      report.log(name + ": draw with seed " + std::to_string(seed) + " rejected: " + e.what());
    }
  }
  throw std::runtime_error(name + ": no acceptable draw within " + std::to_string(opts.retries) +
                           " attempts; try another seed or prime");
}

// Splits Pf = sum of parts of bidegree (i, j) in (m0, m1) and (m2, m3).
PolyP bidegree_part(const PolyP& f, int i) {
  std::vector<Term<Fp>> terms;
  for (const auto& t : f.terms()) {
    if (t.m.e[0] + t.m.e[1] == i) terms.push_back(t);
  }
  return PolyP::from_terms(f.ring(), terms);
}

// The exceptional curves of the two-skew-lines map: the common transversals of
// l1 = {m2 = m3 = 0} and l2 = {m0 = m1 = 0} on V, and the residual conics of the
// planes m1 = 0 and m3 = 0.
std::vector<IdealP> transversal_components(const ScrollInstance& inst, Report& report) {
  const Fp& k = inst.field;
  auto base = inst.base;
  PolyP pf = inst.base_ideal.generators().front();
  PolyP p21 = bidegree_part(pf, 2), p12 = bidegree_part(pf, 1);
  IdealP l1(base, {var(base, 2), var(base, 3)}), l2(base, {var(base, 0), var(base, 1)});
  IdealP all = saturate(saturate(IdealP(base, {p21, p12}), l1), l2);
  auto hp = hilbert(all);
  report.record("palatini.transversal_lines", hp.degree);
  if (hp.dimension != 1) throw DegenerateDraw("transversal lines are not a curve");

  auto elim_ring = Ring<Fp>::make(k, 4, MonomialOrder::block(2), {"m2", "m3", "m0", "m1"});
  auto moved = map_ideal(all, {var(elim_ring, 2), var(elim_ring, 3), var(elim_ring, 0), var(elim_ring, 1)},
                         elim_ring);
  auto binary = eliminate(moved, 2).reduced();
  PolyP quintic;
  for (const auto& g : binary.generators()) {
    if (quintic.ring() == nullptr || g.total_degree() < quintic.total_degree()) quintic = g;
  }
  std::vector<Vec<Fp>> roots;
  if (quintic.ring() != nullptr && quintic.total_degree() == hp.degree) {
    std::vector<std::uint32_t> coeffs(quintic.total_degree() + 1, 0);
    for (const auto& t : quintic.terms()) coeffs[t.m.e[2]] = t.c;
    for (auto r : roots_mod_p(k, coeffs)) roots.push_back({r, k.one()});
    if (coeffs.back() == 0) roots.push_back({k.one(), k.zero()});
  }

  std::vector<IdealP> lines;
  IdealP rest = all;
  for (const auto& a : roots) {
    auto restricted = substitute(p21, {PolyP::constant(base, a[0]), PolyP::constant(base, a[1]), var(base, 2),
                                       var(base, 3)},
                                 base);
    if (restricted.is_zero()) continue;
    auto c = linear_coefficients(restricted);
    Vec<Fp> b{k.neg(c[3]), c[2]};
    IdealP line(base, {var(base, 0).scale(a[1]) - var(base, 1).scale(a[0]),
                       var(base, 2).scale(b[1]) - var(base, 3).scale(b[0])});
    if (!line.contains(all)) continue;
    lines.push_back(line);
    rest = saturate(rest, line);
  }
  if (!rest.is_unit()) lines.push_back(saturate_irrelevant(rest));
  return lines;
}

}  // namespace

std::pair<Mat<Fp>, Mat<Fp>> singular_skew_pencil(const Fp& k, Rng& rng) {
  auto a0 = random_vector(k, 6, rng), a1 = random_vector(k, 6, rng);
  std::vector<std::pair<int, int>> idx;
  for (int i = 0; i < 6; ++i) {
    for (int j = i + 1; j < 6; ++j) idx.push_back({i, j});
  }
  const int unknowns = 30;
  // Rows of (M v)_i as linear functions of the upper-triangle entries of M in block `block`.
  auto add_rows = [&](int block, const Vec<Fp>& v, Mat<Fp>& rows) {
    for (int e = 0; e < 15; ++e) {
      auto [i, j] = idx[e];
      rows[i][block * 15 + e] = k.add(rows[i][block * 15 + e], v[j]);
      rows[j][block * 15 + e] = k.sub(rows[j][block * 15 + e], v[i]);
    }
  };
  Mat<Fp> eqs;
  for (int which = 0; which < 3; ++which) {
    Mat<Fp> r(6, Vec<Fp>(unknowns, k.zero()));
    if (which == 0) add_rows(0, a0, r);
    if (which == 1) add_rows(1, a1, r);
    if (which == 2) {
      add_rows(0, a1, r);
      add_rows(1, a0, r);
    }
    for (auto& row : r) eqs.push_back(std::move(row));
  }
  auto solutions = nullspace(k, eqs, unknowns);
  Vec<Fp> sol(unknowns, k.zero());
  for (const auto& s : solutions) {
    auto c = random_scalar(k, rng);
    for (int u = 0; u < unknowns; ++u) sol[u] = k.add(sol[u], k.mul(c, s[u]));
  }
  Mat<Fp> A(6, Vec<Fp>(6, k.zero())), B = A;
  for (int e = 0; e < 15; ++e) {
    auto [i, j] = idx[e];
    A[i][j] = sol[e];
    A[j][i] = k.neg(sol[e]);
    B[i][j] = sol[15 + e];
    B[j][i] = k.neg(sol[15 + e]);
  }
  return {A, B};
}

std::optional<Vec<Fp>> rational_point_on_hypersurface(const PolyP& f, Rng& rng, int attempts) {
  const Fp& k = f.field();
  auto line_ring = projective_space(k, 1, "a");
  int n = f.ring()->nvars();
  for (int i = 0; i < attempts; ++i) {
    auto p = random_vector(k, n, rng), q = random_vector(k, n, rng);
    std::vector<PolyP> images;
    for (int j = 0; j < n; ++j) images.push_back(var(line_ring, 0).scale(p[j]) + var(line_ring, 1).scale(q[j]));
    auto restricted = substitute(f, images, line_ring);
    if (restricted.is_zero()) return p;
    std::vector<std::uint32_t> coeffs(restricted.total_degree() + 1, 0);
    for (const auto& t : restricted.terms()) coeffs[t.m.e[0]] = t.c;
    auto roots = roots_mod_p(k, coeffs);
    if (roots.empty()) continue;
    Vec<Fp> pt(n);
    for (int j = 0; j < n; ++j) pt[j] = k.add(k.mul(roots[0], p[j]), q[j]);
    return pt;
  }
  return std::nullopt;
}

std::vector<IdealP> lines_on_surface(const PolyP& f) {
  const Fp& k = f.field();
  auto ring = f.ring();
  std::uint32_t p = k.characteristic();
  if (ring->nvars() != 4) throw std::invalid_argument("lines_on_surface expects a surface in P^3");
  if (p > 101) throw std::invalid_argument("line enumeration is only feasible for small primes");
  int deg = f.total_degree();
  std::vector<IdealP> found;
  // Every line is the row space of a unique 2x4 matrix in reduced echelon form.
  for (int c0 = 0; c0 < 4; ++c0) {
    for (int c1 = c0 + 1; c1 < 4; ++c1) {
      std::vector<int> free0, free1;
      for (int c = c0 + 1; c < 4; ++c) {
        if (c != c1) free0.push_back(c);
      }
      for (int c = c1 + 1; c < 4; ++c) free1.push_back(c);
      std::size_t nfree = free0.size() + free1.size();
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < nfree; ++i) total *= p;
      for (std::uint64_t code = 0; code < total; ++code) {
        Vec<Fp> r0(4, 0), r1(4, 0);
        r0[c0] = 1;
        r1[c1] = 1;
        std::uint64_t rest = code;
        for (int c : free0) {
          r0[c] = static_cast<std::uint32_t>(rest % p);
          rest /= p;
        }
        for (int c : free1) {
          r1[c] = static_cast<std::uint32_t>(rest % p);
          rest /= p;
        }
        bool on = true;
        for (int t = 0; t <= deg && on; ++t) {
          Vec<Fp> pt(4);
          for (int j = 0; j < 4; ++j) pt[j] = k.add(r0[j], k.mul(static_cast<std::uint32_t>(t), r1[j]));
          on = k.is_zero(f.evaluate(pt));
        }
        if (on) on = k.is_zero(f.evaluate(r1));
        if (on) found.push_back(LinearSubspace<Fp>::from_points(ring, {r0, r1}).ideal());
      }
    }
  }
  return found;
}

IdealP fiber_over(const ScrollInstance& inst, const Vec<Fp>& point) {
  std::vector<PolyP> forms;
  for (const auto& row : inst.fiber_relations) {
    Vec<Fp> c;
    for (const auto& e : row) c.push_back(e.evaluate(point));
    forms.push_back(linear_form(inst.ambient, c));
  }
  return IdealP(inst.ambient, span_basis(forms));
}

IdealP scroll_preimage(const ScrollInstance& inst, const IdealP& Z, Rng& rng) {
  const Fp& k = inst.field;
  int nx = inst.ambient->nvars(), nm = inst.base->nvars();
  std::vector<std::string> names = inst.ambient->names();
  for (const auto& s : inst.base->names()) names.push_back(s);
  auto inc = Ring<Fp>::make(k, nx + nm, MonomialOrder::grevlex(), names);
  std::vector<PolyP> xs, ms;
  for (int i = 0; i < nx; ++i) xs.push_back(var(inc, i));
  for (int i = 0; i < nm; ++i) ms.push_back(var(inc, nx + i));
  std::vector<PolyP> gens;
  for (const auto& row : inst.fiber_relations) {
    PolyP e(inc);
    for (int j = 0; j < nx; ++j) e += substitute(row[j], ms, inc) * xs[j];
    gens.push_back(e);
  }
  for (const auto& g : Z.generators()) gens.push_back(substitute(g, ms, inc));
  for (const auto& g : inst.base_ideal.generators()) gens.push_back(substitute(g, ms, inc));
  PolyP lf(inc);
  for (int i = 0; i < nm; ++i) lf += ms[i].scale(random_scalar(k, rng));
  auto J = saturate(IdealP(inc, gens), lf);

  std::vector<std::string> block_names = inst.base->names();
  for (const auto& s : inst.ambient->names()) block_names.push_back(s);
  auto block = Ring<Fp>::make(k, nx + nm, MonomialOrder::block(nm), block_names);
  std::vector<PolyP> to_block;
  for (int i = 0; i < nx; ++i) to_block.push_back(var(block, nm + i));
  for (int i = 0; i < nm; ++i) to_block.push_back(var(block, i));
  auto eliminated = eliminate(map_ideal(J, to_block, block), nm);
  std::vector<PolyP> back(nm, PolyP(inst.ambient));
  for (int i = 0; i < nx; ++i) back.push_back(var(inst.ambient, i));
  return saturate_irrelevant(map_ideal(eliminated, back, inst.ambient));
}

ScrollInstance build_bordiga(const BuildOptions& opts, Report& report) {
  auto inst = with_retries(opts, report, "bordiga", [&](const Fp& k, Rng& rng) {
    ScrollInstance s;
    s.name = "bordiga";
    s.field = k;
    s.ambient = projective_space(k, 5, "x");
    s.matrix.assign(4, std::vector<PolyP>(3));
    for (auto& row : s.matrix) {
      for (auto& e : row) e = random_linear(s.ambient, rng);
    }
    IdealP minors_ideal(s.ambient, minors(s.matrix, 3));
    auto independent = graded_piece_dimension(minors_ideal, 3);
    if (independent != 4) throw DegenerateDraw("cubic minors are dependent");
    s.ideal = saturate_irrelevant(minors_ideal);
    auto hp = hilbert(s.ideal);
    if (hp.dimension != 3 || hp.degree != 6) throw DegenerateDraw("unexpected dimension or degree");
    s.degree = hp.degree;
    s.base = projective_space(k, 2, "s");
    s.plane = s.base;
    s.base_ideal = IdealP::zero(s.base);
    PolyMat<Fp> two(2, std::vector<PolyP>(3));
    for (int r = 0; r < 2; ++r) {
      auto c = random_vector(k, 4, rng);
      for (int j = 0; j < 3; ++j) two[r][j] = row_combination(s.matrix, c, j);
    }
    s.u = MapP(s.ambient, s.base, kernel_minors(two), s.ideal);
    for (const auto& f : s.u.forms) {
      if (s.ideal.contains(f)) throw DegenerateDraw("scroll map form vanishes on X");
    }
    s.fiber_relations = linear_matrix_relations(s.matrix, s.base);
    s.v = identity_map(s.base);
    s.v_inverse = s.v;
    s.h = s.u;

    report.expect("bordiga.dimension", "X is a threefold", "scroll of dimension 3", 3, hp.dimension);
    report.expect("bordiga.degree", "deg X", "degree 6 scroll over P2", 6, hp.degree);
    report.expect("bordiga.cubic_minors", "the four cubic minors are independent", "determinantal model",
                  4, independent.get_si());
    report.expect_true("bordiga.u_kernel", "u(x) spans the kernel of M(x) on X", "scroll map", relations_vanish_on_u(s));
    report.expect_true("bordiga.fibers_lines", "fibers of u over random points are lines", "scroll over P2",
                       fibers_are_lines(s, rng, 3));
    report.record("bordiga.X_hilbert_polynomial", hp.polynomial_string());
    report.record("d", s.degree);
    return s;
  });
  report.artifact("X", ideal_to_text(inst.ideal));
  return inst;
}

ScrollInstance build_palatini(const BuildOptions& opts, Report& report) {
  if (opts.mode != "two-skew-lines" && opts.mode != "blowdown6") {
    throw std::invalid_argument("unknown Palatini mode: " + opts.mode);
  }
  auto inst = with_retries(opts, report, "palatini", [&](const Fp& k, Rng& rng) {
    ScrollInstance s;
    s.name = "palatini";
    s.field = k;
    s.ambient = projective_space(k, 5, "x");
    auto [a1, a2] = singular_skew_pencil(k, rng);
    auto [a3, a4] = singular_skew_pencil(k, rng);
    s.skew = {a1, a2, a3, a4};
    s.matrix.assign(6, std::vector<PolyP>(4));
    for (int c = 0; c < 4; ++c) {
      for (int i = 0; i < 6; ++i) s.matrix[i][c] = linear_form(s.ambient, s.skew[c][i]);
    }
    s.ideal = saturate_irrelevant(IdealP(s.ambient, minors(s.matrix, 4)));
    auto hp = hilbert(s.ideal);
    if (hp.dimension != 3 || hp.degree != 7) throw DegenerateDraw("unexpected dimension or degree");
    s.degree = hp.degree;

    s.base = projective_space(k, 3, "m");
    PolyMat<Fp> pencil(6, std::vector<PolyP>(6, PolyP(s.base)));
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        Vec<Fp> c(4);
        for (int q = 0; q < 4; ++q) c[q] = s.skew[q][i][j];
        pencil[i][j] = linear_form(s.base, c);
      }
    }
    PolyP pf = pfaffian(pencil);
    if (pf.total_degree() != 3) throw DegenerateDraw("Pfaffian is not a cubic");
    s.base_ideal = IdealP(s.base, {pf});
    bool smooth = singular_locus(Variety<Fp>(s.base_ideal)).is_unit();
    if (!smooth) throw DegenerateDraw("Pfaffian cubic surface is singular");

    PolyMat<Fp> three(3, std::vector<PolyP>(4));
    for (int r = 0; r < 3; ++r) {
      auto c = random_vector(k, 6, rng);
      for (int j = 0; j < 4; ++j) three[r][j] = row_combination(s.matrix, c, j);
    }
    s.u = MapP(s.ambient, s.base, kernel_minors(three), s.ideal);
    for (const auto& f : s.u.forms) {
      if (s.ideal.contains(f)) throw DegenerateDraw("scroll map form vanishes on X");
    }
    s.fiber_relations.assign(6, std::vector<PolyP>(6, PolyP(s.base)));
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) s.fiber_relations[i][j] = pencil[i][j];
    }
    bool u_into_v = s.ideal.contains(substitute(pf, s.u.forms, s.ambient));

    report.expect("palatini.dimension", "X is a threefold", "scroll of dimension 3", 3, hp.dimension);
    report.expect("palatini.degree", "deg X", "degree 7 scroll over a cubic surface", 7, hp.degree);
    report.expect("palatini.pfaffian_degree", "Pf of the skew pencil", "Pfaffian cubic", 3, pf.total_degree());
    report.expect_true("palatini.V_smooth", "V is a smooth cubic surface", "smooth cubic surface", smooth);
    report.expect_true("palatini.u_into_V", "u maps X into V", "scroll over V", u_into_v);
    report.expect_true("palatini.u_kernel", "A(u(x)) x = 0 on X", "scroll map", relations_vanish_on_u(s));
    report.expect_true("palatini.fibers_lines", "fibers of u over random points of V are lines", "scroll over V",
                       fibers_are_lines(s, rng, 3));
    report.record("palatini.X_hilbert_polynomial", hp.polynomial_string());
    report.record("d", s.degree);

    // v: the two skew lines l1 = {m2 = m3 = 0}, l2 = {m0 = m1 = 0} on V.
    auto m = [&](int i) { return var(s.base, i); };
    IdealP l1(s.base, {m(2), m(3)}), l2(s.base, {m(0), m(1)});
    bool lines_on_v = l1.contains(pf) && l2.contains(pf) && saturate_irrelevant(sum(l1, l2)).is_unit();
    if (!lines_on_v) throw DegenerateDraw("pencil lines missing from V");
    s.plane = projective_space(k, 2, "s");
    s.v = MapP(s.base, s.plane, {m(0) * m(3), m(1) * m(2), m(1) * m(3)}, s.base_ideal);
    // Third intersection of the line through (s0 : s2) on l1 and (s1 : s2) on l2:
    // Pf(mu a, nu b) = mu nu (mu c2 + nu c1).
    auto five = Ring<Fp>::make(k, 5, MonomialOrder::grevlex(), {"s0", "s1", "s2", "mu", "nu"});
    auto f5 = [&](int i) { return var(five, i); };
    auto restricted = substitute(pf, {f5(3) * f5(0), f5(3) * f5(2), f5(4) * f5(1), f5(4) * f5(2)}, five);
    std::vector<Term<Fp>> c1t, c2t;
    for (const auto& t : restricted.terms()) {
      int em = t.m.e[3], en = t.m.e[4];
      Monomial rest = t.m;
      rest.e[3] = 0;
      rest.e[4] = 0;
      rest.recompute();
      if (em == 2 && en == 1) c2t.push_back({rest, t.c});
      else if (em == 1 && en == 2) c1t.push_back({rest, t.c});
      else throw DegenerateDraw("pencil lines missing from V");
    }
    auto sv = [&](int i) { return var(s.plane, i); };
    std::vector<PolyP> to_plane{sv(0), sv(1), sv(2), PolyP(s.plane), PolyP(s.plane)};
    auto c1 = substitute(PolyP::from_terms(five, c1t), to_plane, s.plane);
    auto c2 = substitute(PolyP::from_terms(five, c2t), to_plane, s.plane);
    s.v_inverse = MapP(s.plane, s.base, {c1 * sv(0), c1 * sv(2), -(c2 * sv(1)), -(c2 * sv(2))});
    bool right = proportional_to_identity(compose(s.v, s.v_inverse).forms);
    bool left = proportional_to_identity(compose(s.v_inverse, s.v).forms, std::optional<IdealP>(s.base_ideal));
    bool inverse_on_v = substitute(pf, s.v_inverse.forms, s.plane).is_zero();
    report.expect_true("palatini.skew_lines", "two disjoint lines lie on V", "two-skew-lines map v", lines_on_v);
    report.expect_true("palatini.v_birational", "v o v^-1 and v^-1 o v are the identity",
                       "v birational onto P2", right && left && inverse_on_v);
    // A random frame on P^2, so that the images of the exceptional curves are in
    // general position with respect to the Segre coordinates.
    Mat<Fp> frame;
    std::optional<Mat<Fp>> frame_inverse;
    while (!frame_inverse) {
      frame.clear();
      for (int i = 0; i < 3; ++i) frame.push_back(random_vector(k, 3, rng));
      frame_inverse = inverse(k, frame);
    }
    s.v.forms = compose_forms(linear_substitution(s.plane, frame), s.v.forms, s.base);
    s.v_inverse.forms = compose_forms(s.v_inverse.forms, linear_substitution(s.plane, *frame_inverse), s.plane);
    s.h = compose(s.v, s.u);
    report.record("palatini.h_degree", s.h.degree());
    return s;
  });

  auto comps = transversal_components(inst, report);
  auto m = [&](int i) { return var(inst.base, i); };
  const PolyP& pf = inst.base_ideal.generators().front();
  for (const auto& c : comps) {
    ExceptionalCurve e;
    e.kind = "line";
    e.on_base = c;
    auto hp = hilbert(c);
    e.components = static_cast<int>(hp.degree);
    if (e.components > 1) e.kind = "lines";
    inst.exceptional.push_back(std::move(e));
  }
  for (int which = 0; which < 2; ++which) {
    PolyP cut = which == 0 ? m(1) : m(3);
    IdealP line = which == 0 ? IdealP(inst.base, {m(0), m(1)}) : IdealP(inst.base, {m(2), m(3)});
    ExceptionalCurve e;
    e.kind = "conic";
    e.on_base = saturate(IdealP(inst.base, {pf, cut}), line);
    inst.exceptional.push_back(std::move(e));
  }
  Rng rng(inst.seed ^ 0x5eedULL);
  std::vector<IdealP> images;
  for (std::size_t i = 0; i < inst.exceptional.size(); ++i) {
    auto& e = inst.exceptional[i];
    std::string tag = "palatini.exceptional." + std::to_string(i + 3);
    auto curve = hilbert(e.on_base);
    e.image = image_closure(inst.v.restricted(e.on_base)).ideal();
    images.push_back(e.image);
    auto image_hp = hilbert(e.image);
    e.preimage = scroll_preimage(inst, e.on_base, rng);
    auto pre = hilbert(e.preimage);
    e.preimage_degree = pre.degree;
    e.delta = pre.degree / e.components;
    std::int64_t curve_degree = e.kind == "conic" ? 2 : e.components;
    report.expect(tag + ".curve_degree", "degree of the exceptional curve on V", "exceptional curves of v",
                  curve_degree, curve.degree);
    report.expect(tag + ".contracted", "v contracts each component to a point", "exceptional curves of v",
                  Json{{"dimension", 0}, {"points", e.components}},
                  Json{{"dimension", image_hp.dimension}, {"points", image_hp.degree}});
    report.expect(tag + ".preimage_surface", "u^-1 of the curve is a surface", "exceptional divisors E_i", 2,
                  pre.dimension);
    if (e.kind != "conic") {
      report.expect(tag + ".quadric", "u^-1 of each line is a quadric surface", "u^-1(W) is a quadric",
                    2 * e.components, pre.degree);
    }
    report.record(tag + ".kind", e.kind);
    report.record(tag + ".components", e.components);
    report.record(tag + ".delta", e.delta);
  }
  auto all_images = saturate_irrelevant(intersect(images));
  std::int64_t expected_points = 0;
  for (const auto& e : inst.exceptional) expected_points += e.components;
  report.expect("palatini.exceptional_points_distinct", "images of the exceptional curves are distinct points",
                "exceptional curves of v", expected_points, zero_dim_length(all_images));
  report.record("palatini.exceptional_curves", expected_points);
  report.artifact("X", ideal_to_text(inst.ideal));
  report.artifact("V", ideal_to_text(inst.base_ideal));
  return inst;
}

// A 4x3 pencil of rank 2 with a quadratic kernel has a constant two-dimensional
// left kernel W. Writing W = <(h, 0, p, q), (0, h, r, s)>, the six forms w^T M(x)
// have corank 2 exactly on the lines over conics.
std::vector<IdealP> lines_over_conics(const ScrollInstance& inst) {
  const Fp& k = inst.field;
  auto R = Ring<Fp>::make(k, 5, MonomialOrder::grevlex(), {"p", "q", "r", "s", "h"});
  auto v = [&](int i) { return var(R, i); };
  std::vector<std::vector<PolyP>> W = {{v(4), PolyP(R), v(0), v(1)}, {PolyP(R), v(4), v(2), v(3)}};
  PolyMat<Fp> N;
  for (const auto& w : W) {
    for (int j = 0; j < 3; ++j) {
      std::vector<PolyP> row(6, PolyP(R));
      for (int i = 0; i < 4; ++i) {
        auto c = linear_coefficients(inst.matrix[i][j]);
        for (int x = 0; x < 6; ++x) row[x] += w[i].scale(c[x]);
      }
      N.push_back(std::move(row));
    }
  }
  auto solutions = saturate(IdealP(R, minors(N, 5)), IdealP(R, {v(4)}));
  if (hilbert(solutions).dimension != 0) return {};

  auto elim_ring = Ring<Fp>::make(k, 5, MonomialOrder::block(3), {"p", "q", "r", "s", "h"});
  std::vector<PolyP> same;
  for (int i = 0; i < 5; ++i) same.push_back(var(elim_ring, i));
  auto binary = eliminate(map_ideal(solutions, same, elim_ring), 3).reduced();
  if (binary.generators().empty()) return {};
  PolyP eliminant = binary.generators().front();
  std::vector<std::uint32_t> coeffs(eliminant.total_degree() + 1, 0);
  for (const auto& t : eliminant.terms()) coeffs[t.m.e[3]] = t.c;

  std::vector<IdealP> lines;
  for (auto s0 : roots_mod_p(k, coeffs)) {
    auto fiber = saturate_irrelevant(sum(solutions, IdealP(R, {v(3) - v(4).scale(s0)}))).reduced();
    Mat<Fp> rows;
    for (const auto& g : fiber.generators()) {
      if (g.total_degree() == 1) rows.push_back(linear_coefficients(g));
    }
    auto point = nullspace(k, rows, 5);
    if (point.size() != 1) continue;
    Mat<Fp> values;
    for (const auto& row : N) {
      Vec<Fp> r;
      for (const auto& e : row) r.push_back(e.evaluate(point[0]));
      values.push_back(std::move(r));
    }
    auto kernel = nullspace(k, values, 6);
    if (kernel.size() == 2) lines.push_back(LinearSubspace<Fp>::from_points(inst.ambient, kernel).ideal());
  }
  return lines;
}

}  // namespace birat
