#include "doctest.h"

#include <unistd.h>

#include <filesystem>
#include <fstream>

#include "birat/ideal/groebner.hpp"
#include "birat/ideal/operations.hpp"
#include "birat/ideal/session.hpp"
#include "oracles.hpp"

using namespace birat;

namespace {

using QPoly = Polynomial<RationalField>;
using QIdeal = Ideal<RationalField>;

RingPtr<RationalField> qring(int n, MonomialOrder o = MonomialOrder::grevlex(), std::vector<std::string> names = {}) {
  return Ring<RationalField>::make(RationalField(), n, o, names);
}

RingPtr<PrimeField> pring(int n, std::uint32_t p = 32003, MonomialOrder o = MonomialOrder::grevlex()) {
  return Ring<PrimeField>::make(PrimeField(p), n, o);
}

template <class F>
Ideal<F> I(const RingPtr<F>& r, const std::vector<std::string>& gens) {
  return Ideal<F>::parse(r, gens);
}

template <class F>
Polynomial<F> P(const RingPtr<F>& r, const std::string& s) {
  return parse_polynomial(r, s);
}

}  // namespace

TEST_CASE("normal form examples") {
  auto lex = qring(2, MonomialOrder::lex(), {"x", "y"});
  auto f = P(lex, "x^2+3*x*y-7");
  CHECK(normal_form(f, {f}).is_zero());
  // x^2 -> x*y -> y^2 after two division steps by x - y
  CHECK(normal_form(P(lex, "x^2"), {P(lex, "x-y")}) == P(lex, "y^2"));
  auto r = qring(3);
  auto J = I(r, {"x0^2-x1*x2", "x1^3"});
  CHECK(J.groebner()->reduce(QPoly::constant(r, 1)) == QPoly::constant(r, 1));
  auto other = qring(3, MonomialOrder::lex());
  CHECK_THROWS_AS(normal_form(P(other, "x0"), {P(r, "x0")}), ContextMismatch);
}

TEST_CASE("groebner basis examples") {
  auto r = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  auto principal = I(r, {"2*x^2-4*y*z"});
  REQUIRE(principal.groebner()->elements.size() == 1);
  CHECK(principal.groebner()->elements[0] == P(r, "x^2-2*y*z"));

  auto lex = qring(3, MonomialOrder::lex(), {"x", "y", "z"});
  auto lin = I(lex, {"x-y", "y-z"});
  auto gb = lin.groebner()->elements;
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == P(lex, "y-z"));
  CHECK(gb[1] == P(lex, "x-z"));

  auto p3 = qring(4);
  std::vector<std::string> cubic = {"x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"};
  auto tc = I(p3, cubic);
  std::vector<QPoly> gens;
  for (const auto& s : cubic) gens.push_back(P(p3, s));
  CHECK(is_groebner_basis(gens));
  CHECK(tc.groebner()->elements.size() == 3);
  for (const auto& g : tc.groebner()->elements) {
    bool found = false;
    for (const auto& h : gens) found = found || g == h.monic();
    CHECK(found);
  }

  CHECK(QIdeal::zero(r).groebner()->elements.empty());
}

TEST_CASE("ideal membership") {
  auto r = qring(2, MonomialOrder::grevlex(), {"x", "y"});
  auto J = I(r, {"x^2+y^2", "x*y"});
  CHECK(J.contains(P(r, "x^2+y^2")));
  auto f = P(r, "x^2*y^2");
  CHECK(oracle::macaulay_member(f, J.generators(), 4));
  CHECK(J.contains(f));
  CHECK_FALSE(J.contains(P(r, "x^2")));
  CHECK_FALSE(oracle::macaulay_member(P(r, "x^2"), J.generators(), 6));
  auto m = I(r, {"x", "y"});
  CHECK_FALSE(m.contains(QPoly::constant(r, 1)));
}

TEST_CASE("elimination") {
  auto r = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  auto J = I(r, {"y-x^2", "z-x^3"});
  auto E = eliminate(J, 1);
  REQUIRE(E.generators().size() == 1);
  auto g = E.generators()[0];
  CHECK(g.degree_in(0) == 0);
  // Resultant in x of y - x^2 and z - x^3 at sample (y, z), via the Sylvester matrix.
  for (auto [y, z] : std::vector<std::pair<int, int>>{{2, 3}, {5, -1}, {-3, 7}, {4, 8}}) {
    std::vector<mpq_class> a = {-1, 0, y};     // -x^2 + y
    std::vector<mpq_class> b = {-1, 0, 0, z};  // -x^3 + z
    std::vector<std::vector<mpq_class>> syl(5, std::vector<mpq_class>(5));
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) syl[i][i + j] = a[j];
    }
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 4; ++j) syl[3 + i][i + j] = b[j];
    }
    mpq_class res = oracle::determinant(syl);
    mpq_class val = g.evaluate({0, y, z});
    CHECK(res == val);
    CHECK(val == mpq_class(y) * y * y - mpq_class(z) * z);
  }
  CHECK(eliminate(J, 0).equals(J));
  CHECK(eliminate(I(r, {"x", "y", "z"}), 3).is_zero());
}

TEST_CASE("colon and saturation") {
  auto r = qring(2, MonomialOrder::grevlex(), {"x", "y"});
  auto J = I(r, {"x^2", "x*y"});
  auto m = I(r, {"x", "y"});
  auto S = saturate(J, m);
  CHECK(S.equals(I(r, {"x"})));
  // degree-by-degree: x times the maximal ideal lands in J
  CHECK(J.contains(P(r, "x*x")));
  CHECK(J.contains(P(r, "x*y")));
  CHECK(saturate(S, m).equals(S));
  CHECK(colon(J, QIdeal::unit(r)).equals(J));
  CHECK(colon(J, m).contains(J));
  CHECK(saturate(m, m).is_unit());
  CHECK(saturates_to_unit(m, m));
  CHECK_FALSE(saturates_to_unit(I(r, {"x"}), m));
  CHECK_THROWS_AS(colon(J, QIdeal::zero(r)), AlgebraError);
  CHECK_THROWS_AS(saturate(J, QIdeal::zero(r)), AlgebraError);

  // non-linear saturating polynomial goes through iterated colon
  auto s = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  auto K = I(s, {"x*(y^2-z^2)", "x^2*(y^2-z^2)^2"});
  CHECK(saturate(K, P(s, "y^2-z^2")).equals(I(s, {"x"})));
}

TEST_CASE("saturation by linear forms and the irrelevant ideal") {
  auto r = qring(3);
  // The point (1:1:1) with an embedded component at (0:0:1).
  auto pt = I(r, {"x0-x1", "x1-x2"});
  auto emb = I(r, {"x0^2", "x1"});
  auto J = intersect(pt, emb);
  CHECK(saturate_linear(J, P(r, "x0+2*x1")).equals(pt));
  CHECK(saturate_linear(J, P(r, "x0-x2")).equals(emb));
  CHECK(saturate(J, P(r, "x0")).equals(pt));
  auto irr = I(r, {"x0^3", "x1^2", "x0*x1*x2^4"});
  CHECK(saturate_irrelevant(irr).equals(I(r, {"x0^3", "x1^2", "x0*x1"})));
  CHECK(saturate_irrelevant(irr).equals(saturate(irr, I(r, {"x0", "x1", "x2"}))));
  auto trash = intersect(pt, I(r, {"x0", "x1", "x2"}).reduced());
  auto trash2 = QIdeal(r, power(I(r, {"x0", "x1", "x2"}), 3).generators());
  auto mixed = intersect(pt, trash2);
  CHECK(saturate_irrelevant(mixed).equals(pt));
  CHECK(saturate_irrelevant(trash).equals(pt));

  auto [psi, inv] = move_form_to_last(P(r, "2*x0+3*x1-x2"));
  // psi sends the form to the last variable and inv undoes psi
  CHECK(substitute(P(r, "2*x0+3*x1-x2"), psi, r) == P(r, "x2"));
  for (int i = 0; i < 3; ++i) {
    CHECK(substitute(substitute(QPoly::variable(r, i), psi, r), inv, r) == QPoly::variable(r, i));
  }
}

TEST_CASE("radical membership") {
  auto r = qring(2, MonomialOrder::grevlex(), {"x", "y"});
  auto J = I(r, {"x^3", "y^2"});
  CHECK(radical_contains(J, P(r, "x+y")));
  CHECK_FALSE(radical_contains(J, P(r, "x+1")));
}

TEST_CASE("intersection") {
  auto r = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  auto J = I(r, {"x^2-y*z", "x*y"});
  CHECK(intersect(J, J).equals(J));
  CHECK(intersect(I(r, {"x"}), I(r, {"y"})).equals(I(r, {"x*y"})));
  auto two = intersect(I(r, {"y", "z"}), I(r, {"x", "z"}));
  auto h = hilbert(two);
  CHECK(h.dimension == 0);
  CHECK(h.polynomial_constant() == 2);
  CHECK(zero_dim_length(two) == 2);
  auto K = I(r, {"x+y", "z^2"});
  auto JK = intersect(J, K);
  for (const auto& g : JK.generators()) {
    CHECK(J.contains(g));
    CHECK(K.contains(g));
  }
}

TEST_CASE("hilbert data") {
  auto p3 = qring(4);
  auto h = hilbert(QIdeal::zero(p3));
  CHECK(h.dimension == 3);
  CHECK(h.degree == 1);
  for (long t = 0; t < 8; ++t) CHECK(h.polynomial_at(t) == mpq_class((t + 1) * (t + 2) * (t + 3)) / 6);

  // Segre embedding of P2 x P1: 2x2 minors of the 3x2 matrix [[x0,x1],[x2,x3],[x4,x5]].
  auto p5 = qring(6);
  auto seg = I(p5, {"x0*x3-x1*x2", "x0*x5-x1*x4", "x2*x5-x3*x4"});
  auto hs = hilbert(seg);
  CHECK(hs.dimension == 3);
  CHECK(hs.degree == 3);

  auto p2 = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  CHECK(zero_dim_length(I(p2, {"x^2", "y"})) == 2);
  CHECK(zero_dim_length(I(p2, {"x", "y"})) == 1);
  CHECK_THROWS_AS(zero_dim_length(I(p2, {"x"})), AlgebraError);
  CHECK_THROWS_AS(hilbert(I(p2, {"x^2-y"})), AlgebraError);

  // twisted cubic: 3t + 1
  auto tc = I(p3, {"x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"});
  auto ht = hilbert(tc);
  CHECK(ht.dimension == 1);
  CHECK(ht.degree == 3);
  CHECK(ht.arithmetic_genus() == 0);
  // plane cubic: genus 1
  CHECK(hilbert(I(p2, {"x^3+y^3+z^3"})).arithmetic_genus() == 1);
}

TEST_CASE("graded pieces") {
  auto p3 = qring(4);
  CHECK(graded_piece_dimension(QIdeal::zero(p3), 1) == 0);
  CHECK(binomial(4, 3) == 4);
  CHECK(graded_piece_dimension(I(p3, {"x1", "x2", "x3"}), 1) == 3);

  auto p2 = qring(3, MonomialOrder::grevlex(), {"x", "y", "z"});
  auto pts = intersect(std::vector<QIdeal>{I(p2, {"y", "z"}), I(p2, {"x", "z"}), I(p2, {"x", "y"})});
  // conics through three coordinate points: kernel of the 3 x 6 evaluation matrix
  auto quad = oracle::monomials_of_degree(3, 2);
  std::vector<std::vector<mpq_class>> ev;
  for (std::vector<int> p : {std::vector<int>{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) {
    std::vector<mpq_class> row;
    for (const auto& m : quad) {
      mpq_class v = 1;
      for (int i = 0; i < 3; ++i) {
        for (unsigned e = 0; e < m.e[i]; ++e) v *= p[i];
      }
      row.push_back(v);
    }
    ev.push_back(row);
  }
  long expected = static_cast<long>(quad.size()) - oracle::rank(ev);
  CHECK(expected == 3);
  CHECK(graded_piece_dimension(pts, 2) == expected);
}

TEST_CASE("prime field engine agrees with rationals") {
  auto q = qring(4);
  auto p = pring(4);
  std::vector<std::string> gens = {"x0^2-3*x1*x2+x3^2", "x1^3-x0*x2*x3", "x0*x1-2*x2^2"};
  auto hq = hilbert(I(q, gens));
  auto hp = hilbert(I(p, gens));
  CHECK(hq.numerator == hp.numerator);
  CHECK(hq.degree == hp.degree);
}

TEST_CASE("text serialization round trip") {
  auto r = pring(3, 101);
  auto J = I(r, {"x0^2-5*x1*x2", "x2^3+x0"});
  auto text = ideal_to_text(J);
  CHECK(ring_header_field(text.substr(0, text.find('\n'))) == "fp");
  auto back = parse_ideal_text<PrimeField>(text);
  CHECK(back.ring()->describe() == r->describe());
  CHECK(back.generators() == J.generators());
  CHECK_THROWS_AS(parse_ideal_text<RationalField>(text), AlgebraError);
}

TEST_CASE("session cache") {
  auto dir = std::filesystem::temp_directory_path() / ("birat-test-cache-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  auto r = qring(4);
  std::vector<std::string> gens = {"x0*x2-x1^2", "x1*x3-x2^2", "x0*x3-x1*x2"};
  std::vector<QPoly> first;
  {
    Session s(dir, 0.0);
    SessionScope scope(s);
    first = I(r, gens).groebner()->elements;
    CHECK(s.counters().cache_misses == 1);
    CHECK(s.counters().cache_hits == 0);
  }
  {
    Session s(dir, 0.0);
    SessionScope scope(s);
    auto again = I(r, gens).groebner()->elements;
    CHECK(s.counters().cache_hits == 1);
    CHECK(again == first);
  }
  // corrupt every entry: loads must fall back to recomputation
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    std::ofstream(e.path(), std::ios::app) << "garbage\n";
  }
  {
    Session s(dir, 0.0);
    SessionScope scope(s);
    auto again = I(r, gens).groebner()->elements;
    CHECK(s.counters().cache_hits == 0);
    CHECK(again == first);
  }
  std::filesystem::remove_all(dir);
  CHECK(content_hash("a") != content_hash("b"));
  CHECK(content_hash("a").size() == 32);
}
