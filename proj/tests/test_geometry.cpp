#include "doctest.h"

#include "birat/geometry/variety.hpp"
#include "oracles.hpp"

using namespace birat;

namespace {

using Q = RationalField;
using QPoly = Polynomial<Q>;

RingPtr<Q> qspace(int n, const std::string& prefix = "x") { return projective_space(Q(), n, prefix); }

QPoly P(const RingPtr<Q>& r, const std::string& s) { return parse_polynomial(r, s); }

Ideal<Q> I(const RingPtr<Q>& r, const std::vector<std::string>& gens) { return Ideal<Q>::parse(r, gens); }

Vec<Q> pt(std::initializer_list<long> coords) {
  Vec<Q> v;
  for (long c : coords) v.push_back(mpq_class(c));
  return v;
}

// Order of vanishing at the point by brute force: the least total degree among
// terms after setting the coordinate `affine` to 1, for a point that is a unit vector.
int lowest_degree_at_unit_point(const QPoly& f, int affine) {
  int low = 1 << 20;
  for (const auto& t : f.terms()) low = std::min<int>(low, t.m.deg - t.m.e[affine]);
  return low;
}

}  // namespace

TEST_CASE("segre embeddings") {
  auto s11 = segre_embed(Q(), 1, 1);
  CHECK(s11.image.dimension() == 2);
  CHECK(s11.image.degree() == 2);
  CHECK(s11.image.ideal().groebner()->elements.size() == 1);
  auto s21 = segre_embed(Q(), 2, 1);
  CHECK(s21.target->nvars() == 6);
  CHECK(s21.image.dimension() == 3);
  CHECK(s21.image.degree() == 3);
  Vec<Q> e0 = pt({1, 0, 0, 1, 0});
  auto image = s21.map.evaluate(e0);
  CHECK(image == pt({1, 0, 0, 0, 0, 0}));
}

TEST_CASE("image closure") {
  auto p1 = qspace(1, "s");
  auto p2 = qspace(2, "y");
  RationalMap<Q> veronese(p1, p2, {P(p1, "s0^2"), P(p1, "s0*s1"), P(p1, "s1^2")});
  auto conic = image_closure(veronese);
  CHECK(conic.ideal().equals(I(p2, {"y0*y2 - y1^2"})));

  auto p3 = qspace(3, "y");
  RationalMap<Q> cubic(p1, p3, {P(p1, "s0^3"), P(p1, "s0^2*s1"), P(p1, "s0*s1^2"), P(p1, "s1^3")});
  auto twisted = image_closure(cubic);
  CHECK(twisted.degree() == 3);
  CHECK(twisted.arithmetic_genus() == 0);
  CHECK(implicitize(cubic, 2).equals(twisted.ideal()));

  // Functoriality: the image of a composite is the image of the image.
  auto p2w = qspace(2, "w");
  auto center = LinearSubspace<Q>::from_forms(p3, {P(p3, "y0 + y3"), P(p3, "y1"), P(p3, "y2 - y0")});
  auto proj = linear_projection(center, "w");
  auto direct = image_closure(compose(proj, cubic));
  auto staged = image_closure(proj.restricted(twisted.ideal()));
  CHECK(direct.ideal().equals(staged.ideal()));
  CHECK(direct.degree() == 3);
}

TEST_CASE("image closure on a variety matches restriction of the map") {
  auto p3 = qspace(3);
  auto p2 = qspace(2, "w");
  auto quadric = I(p3, {"x0*x3 - x1*x2"});
  // Projection of the smooth quadric from one of its points is birational onto P^2.
  RationalMap<Q> proj(p3, p2, {P(p3, "x1"), P(p3, "x2"), P(p3, "x3")}, quadric);
  auto image = image_closure(proj);
  CHECK(image.ideal().is_zero());
}

TEST_CASE("linear projection") {
  auto p2 = qspace(2);
  auto center = LinearSubspace<Q>::from_points(p2, {pt({0, 0, 1})});
  auto proj = linear_projection(center);
  CHECK(proj.target->nvars() == 2);
  CHECK(center.dimension() == 0);
  // Points on a line through the center share an image.
  auto a = proj.evaluate(pt({1, 2, 5}));
  auto b = proj.evaluate(pt({1, 2, -7}));
  CHECK(a == b);
  CHECK_THROWS(LinearSubspace<Q>::from_forms(p2, {P(p2, "x0"), P(p2, "2*x0")}));
  CHECK_THROWS(linear_projection(LinearSubspace<Q>::from_forms(p2, {P(p2, "x0")})));
}

TEST_CASE("composition and inversion of the quadratic Cremona map") {
  auto p2 = qspace(2);
  RationalMap<Q> cremona(p2, p2, {P(p2, "x1*x2"), P(p2, "x0*x2"), P(p2, "x0*x1")});
  auto twice = compose(cremona, cremona);
  CHECK(twice.degree() == 1);
  CHECK(proportional_to_identity(twice.forms));
  auto id = identity_map(p2);
  CHECK(compose(id, cremona).forms == cremona.forms);

  Rng rng(7);
  auto inv = invert_birational(cremona, rng);
  CHECK(inv.degree() == 2);
  CHECK(proportional(inv.forms, cremona.forms));
  CHECK(round_trip(cremona, inv));
  auto inv_id = invert_birational(id, rng);
  CHECK(proportional_to_identity(inv_id.forms));

  auto base = base_locus(cremona);
  CHECK(hilbert(base).dimension == 0);
  CHECK(zero_dim_length(base) == 3);
  auto points = intersect(std::vector<Ideal<Q>>{point_ideal(p2, pt({1, 0, 0})), point_ideal(p2, pt({0, 1, 0})),
                                                 point_ideal(p2, pt({0, 0, 1}))});
  CHECK(base.equals(points));
}

TEST_CASE("composition into the base locus is undefined") {
  auto p1 = qspace(1, "s");
  auto p2 = qspace(2);
  RationalMap<Q> cremona(p2, p2, {P(p2, "x1*x2"), P(p2, "x0*x2"), P(p2, "x0*x1")});
  RationalMap<Q> to_vertex(p1, p2, {P(p1, "s0"), P(p1, "0"), P(p1, "0")});
  CHECK_THROWS_WITH(compose(cremona, to_vertex), doctest::Contains("composition undefined"));
}

TEST_CASE("non-birational maps are rejected") {
  auto p1 = qspace(1);
  RationalMap<Q> square(p1, p1, {P(p1, "x0^2"), P(p1, "x1^2")});
  Rng rng(3);
  CHECK_THROWS(invert_birational(square, rng));
}

TEST_CASE("linear isomorphisms invert and have empty base locus") {
  auto p3 = qspace(3);
  RationalMap<Q> lin(p3, p3, {P(p3, "x0 + x1"), P(p3, "x1 - x2"), P(p3, "x2 + 3*x3"), P(p3, "x3 - x0")});
  Rng rng(11);
  auto inv = invert_birational(lin, rng);
  CHECK(inv.degree() == 1);
  CHECK(base_locus(lin).is_unit());
  // Oracle: the inverse's coefficient matrix times the map's is a scalar matrix.
  Mat<Q> a, b;
  for (const auto& f : lin.forms) a.push_back(linear_coefficients(f));
  for (const auto& f : inv.forms) b.push_back(linear_coefficients(f));
  std::vector<std::vector<mpq_class>> prod(4, std::vector<mpq_class>(4));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) prod[i][j] += b[i][k] * a[k][j];
    }
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) CHECK(prod[i][j] == (i == j ? prod[0][0] : mpq_class(0)));
  }
  CHECK(prod[0][0] != 0);
}

TEST_CASE("singular loci") {
  auto p3 = qspace(3);
  CHECK(singular_locus(Variety<Q>(I(p3, {"x0*x3 - x1*x2"}))).is_unit());
  auto vertex = singular_locus(Variety<Q>(I(p3, {"x0*x2 - x1^2"})));
  CHECK(vertex.equals(point_ideal(p3, pt({0, 0, 0, 1}))));
  // The twisted cubic is smooth; a nodal plane cubic is not.
  CHECK(singular_locus(Variety<Q>(I(p3, {"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"}))).is_unit());
  auto nodal = Variety<Q>(I(p3, {"x3", "x1^2*x2 - x0^2*x0 - x0^2*x2"}));
  CHECK(singular_locus(nodal).equals(point_ideal(p3, pt({0, 0, 1, 0}))));
}

TEST_CASE("multiplicity at a point") {
  auto p3 = qspace(3);
  Rng rng(5);
  auto line = Variety<Q>(I(p3, {"x0 - x1", "x2 + x3"}));
  CHECK(multiplicity_at_point(line, pt({1, 1, 2, -2}), rng) == 1);
  auto cubic = P(p3, "x1^2*x2 - x0^3 - x0^2*x2");
  auto nodal = Variety<Q>(Ideal<Q>(p3, {P(p3, "x3"), cubic}));
  int oracle = lowest_degree_at_unit_point(cubic, 2);
  CHECK(oracle == 2);
  CHECK(multiplicity_at_point(nodal, pt({0, 0, 1, 0}), rng) == oracle);
  CHECK(multiplicity_at_point(nodal, pt({-1, 0, 1, 0}), rng) == 1);
  CHECK_THROWS(multiplicity_at_point(nodal, pt({1, 0, 0, 0}), rng));
  CHECK_THROWS(multiplicity_at_point(Variety<Q>(I(p3, {"x0"})), pt({0, 1, 0, 0}), rng));
}

TEST_CASE("tangent directions distinguish nodes from cusps") {
  auto p3 = qspace(3);
  Rng rng(9);
  auto node = I(p3, {"x3", "x1^2*x2 - x0^3 - x0^2*x2"});
  auto cusp = I(p3, {"x3", "x1^2*x2 - x0^3"});
  auto at = pt({0, 0, 1, 0});
  auto node_dirs = tangent_directions(node, at);
  auto cusp_dirs = tangent_directions(cusp, at);
  CHECK(zero_dim_length(node_dirs) == 2);
  CHECK(zero_dim_length(cusp_dirs) == 2);
  CHECK(zero_dim_reduced(node_dirs, rng));
  CHECK_FALSE(zero_dim_reduced(cusp_dirs, rng));
  auto cone = tangent_cone_ideal(node, at);
  CHECK(cone.contains(P(p3, "x1^2 - x0^2")));
  CHECK(cone.contains(P(p3, "x3")));
}

TEST_CASE("cones from a point") {
  auto p3 = qspace(3);
  auto conic = Variety<Q>(I(p3, {"x3", "x0*x2 - x1^2"}));
  auto cone = cone_from_point(conic, pt({1, 1, 0, 1}));
  CHECK(cone.dimension() == 2);
  CHECK(cone.degree() == 2);
  CHECK(conic.ideal().contains(cone.ideal()));
  // From a point on a twisted cubic the cone is a quadric: 3 - 1.
  auto twisted = Variety<Q>(I(p3, {"x0*x2 - x1^2", "x0*x3 - x1*x2", "x1*x3 - x2^2"}));
  auto from_on = cone_from_point(twisted, pt({1, 0, 0, 0}));
  CHECK(from_on.degree() == 2);
  CHECK(twisted.ideal().contains(from_on.ideal()));
}

TEST_CASE("infinitesimal neighbourhoods") {
  auto p2 = qspace(2);
  auto sq = I(p2, {"x0^2", "x0*x1", "x1^2"});
  auto point = I(p2, {"x0", "x1"});
  CHECK(contains_neighborhood(sq, point, 1));
  CHECK(contains_neighborhood(sq, point, 0));
  CHECK_FALSE(contains_neighborhood(sq, point, 2));
  CHECK_FALSE(contains_neighborhood(I(p2, {"x0"}), point, 1));
}

TEST_CASE("tangent cones of hypersurfaces") {
  auto p3 = qspace(3);
  auto quadric = P(p3, "x0*x3 - x1*x2");
  auto plane = tangent_cone_at_point(quadric, pt({1, 0, 0, 0}));
  CHECK(proportional(std::vector<QPoly>{plane}, std::vector<QPoly>{P(p3, "x3")}));
  auto cone = P(p3, "x0*x2 - x1^2");
  CHECK(tangent_cone_at_point(cone, pt({0, 0, 0, 1})).monic() == cone.monic());
  // Off-coordinate smooth point: the tangent plane is the gradient.
  auto at = pt({1, 1, 1, 1});
  auto tangent = tangent_cone_at_point(quadric, at);
  QPoly gradient(p3);
  for (int i = 0; i < 4; ++i) gradient += QPoly::variable(p3, i).scale(quadric.derivative(i).evaluate(at));
  CHECK(tangent.monic() == gradient.monic());
  CHECK_THROWS(tangent_cone_at_point(quadric, pt({1, 1, 0, 1})));
}

TEST_CASE("point moves are inverse substitutions") {
  auto p3 = qspace(3);
  auto at = pt({0, 2, -1, 3});
  auto [to_new, to_old] = move_point_to_first(p3, at);
  auto f = P(p3, "x0^2*x1 - 3*x2*x3^2 + x1*x2*x3");
  CHECK(substitute(substitute(f, to_new, p3), to_old, p3) == f);
  auto g = P(p3, "x0 + x1 + 2*x2");
  CHECK(g.evaluate(at) == 0);
  auto moved = substitute(g, to_new, p3);
  CHECK(moved.evaluate(pt({1, 0, 0, 0})) == 0);
}

TEST_CASE("Bezout on random lines") {
  auto p3 = projective_space(PrimeField(32003), 3, "x");
  Rng rng(21);
  for (int e = 1; e <= 4; ++e) {
    Polynomial<PrimeField> f(p3);
    for (const auto& m : oracle::monomials_of_degree(4, e)) {
      f += Polynomial<PrimeField>::monomial(p3, m, random_scalar(p3->field(), rng));
    }
    auto line = LinearSubspace<PrimeField>::random(p3, 1, rng);
    std::vector<Polynomial<PrimeField>> gens = line.forms();
    gens.push_back(f);
    CHECK(zero_dim_length(Ideal<PrimeField>(p3, gens)) == e);
  }
}

TEST_CASE("random linear subspaces") {
  auto p5 = projective_space(PrimeField(32003), 5, "x");
  Rng rng(2);
  auto lambda = LinearSubspace<PrimeField>::random(p5, 3, rng);
  CHECK(lambda.forms().size() == 2);
  for (const auto& p : lambda.points()) CHECK(lambda.contains(p));
  auto param_ring = projective_space(PrimeField(32003), 3, "t");
  auto param = lambda.parametrization(param_ring);
  for (const auto& f : lambda.forms()) CHECK(substitute(f, param, param_ring).is_zero());
}
