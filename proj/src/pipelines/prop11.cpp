#include "birat/pipelines/run.hpp"

namespace birat {

namespace {

template <class F>
Vec<F> linear_point(const Ideal<F>& I) {
  const F& k = I.ring()->field();
  Mat<F> rows;
  auto reduced = I.reduced();
  for (const auto& g : reduced.generators()) {
    if (g.total_degree() == 1) rows.push_back(linear_coefficients(g));
  }
  auto ns = nullspace(k, rows, I.ring()->nvars());
  if (ns.size() != 1) throw AlgebraError("ideal is not a linear point");
  return ns[0];
}

template <class F>
std::vector<Polynomial<F>> linear_part(const Ideal<F>& I) {
  std::vector<Polynomial<F>> out;
  auto reduced = I.reduced();
  for (const auto& g : reduced.generators()) {
    if (g.total_degree() == 1) out.push_back(g);
  }
  return out;
}

}  // namespace

// The Segre threefold P^2 x P^1 in P^5 projected from the line L = F1 . F2,
// F1 = s(P^2 x a), F2 = s(l x P^1).
template <class F>
Report verify_prop11(const F& field, std::uint64_t seed) {
  Report report("prop11");
  Rng rng(seed);
  auto segre = segre_embed(field, 2, 1);
  auto z = segre.target;
  auto product = segre.product;
  auto zij = [&](int i, int j) { return Polynomial<F>::variable(z, i * 2 + j); };
  const auto& X = segre.image;
  report.expect("prop11.segre", "the Segre threefold has dimension 3 and degree 3", "Segre threefold",
                Json{{"dim", 3}, {"deg", 3}}, Json{{"dim", X.dimension()}, {"deg", X.degree()}});

  auto L = LinearSubspace<F>::from_forms(z, {zij(0, 1), zij(1, 1), zij(2, 1), zij(2, 0)});
  auto F1 = image_closure(segre.map.restricted(Ideal<F>(product, {Polynomial<F>::variable(product, 4)}))).ideal();
  auto F2 = image_closure(segre.map.restricted(Ideal<F>(product, {Polynomial<F>::variable(product, 2)}))).ideal();
  report.expect_true("prop11.L", "L = F1 . F2 is a line on X", "center L",
                     saturate_irrelevant(sum(F1, F2)).equals(L.ideal()) && L.dimension() == 1);

  auto pi = linear_projection(L, "w").restricted(X.ideal());
  auto p3 = pi.target;
  auto P_ideal = saturate_irrelevant(image_closure(pi.restricted(F1)).ideal());
  auto B = saturate_irrelevant(image_closure(pi.restricted(F2)).ideal());
  auto P_hp = hilbert(P_ideal), B_hp = hilbert(B);
  report.expect("prop11.P", "pi_L contracts F1 to a point P", "P = pi_L(F1)", Json{{"dim", 0}, {"deg", 1}},
                Json{{"dim", P_hp.dimension}, {"deg", P_hp.degree}});
  report.expect("prop11.B", "pi_L maps F2 onto a line B", "B = pi_L(F2)", Json{{"dim", 1}, {"deg", 1}},
                Json{{"dim", B_hp.dimension}, {"deg", B_hp.degree}});
  auto mP = point_ideal(p3, linear_point(P_ideal));
  report.expect_true("prop11.P_not_on_B", "P does not lie on B", "P off the line B",
                     saturate_irrelevant(sum(B, mP)).is_unit());

  RationalMap<F> inverse;
  try {
    inverse = invert_birational(pi, rng);
  } catch (const std::exception& e) {
    report.fail("prop11.birational", "pi_L is birational onto P3", "pi_L birational", e.what());
    return report;
  }
  report.expect_true("prop11.birational", "pi_L is birational onto P3", "pi_L birational",
                     round_trip(pi, inverse));
  report.expect("prop11.quadrics", "the inverse is given by quadrics", "linear system of quadrics", 2,
                inverse.degree());
  report.artifact("inverse", map_to_text(inverse));
  auto base = base_locus(inverse);
  report.expect_true("prop11.base_locus", "the base scheme of the quadrics is B u P", "base locus B u P",
                     base.equals(intersect(B, mP)));

  auto plane_forms = linear_part(intersect(B, mP));
  report.expect("prop11.plane", "B and P span a plane", "plane <B u P>", 1,
                static_cast<long>(plane_forms.size()));
  if (plane_forms.size() == 1) {
    auto contracted = image_closure(inverse.restricted(Ideal<F>(p3, plane_forms)));
    report.expect_true("prop11.plane_contracted", "the inverse contracts the plane <B u P> onto L",
                       "plane contracted to L",
                       contracted.dimension() == 1 && saturate_irrelevant(contracted.ideal()).equals(L.ideal()));
  }
  return report;
}

template Report verify_prop11(const PrimeField&, std::uint64_t);
template Report verify_prop11(const RationalField&, std::uint64_t);

}  // namespace birat
