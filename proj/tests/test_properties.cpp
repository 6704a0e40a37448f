#include "doctest.h"

#include "birat/pipelines/run.hpp"
#include "oracles.hpp"

using namespace birat;

namespace {

using Q = RationalField;

template <class F>
Polynomial<F> random_poly(const RingPtr<F>& r, Rng& rng, int terms, int max_degree) {
  Polynomial<F> p(r);
  for (int t = 0; t < terms; ++t) {
    std::vector<unsigned> e(r->nvars());
    int budget = static_cast<int>(rng() % (max_degree + 1));
    for (int s = 0; s < budget; ++s) ++e[rng() % r->nvars()];
    p += Polynomial<F>::monomial(r, Monomial::from_exponents(e), random_scalar(r->field(), rng));
  }
  return p;
}

template <class F>
Polynomial<F> random_form(const RingPtr<F>& r, Rng& rng, int degree, int terms) {
  auto monomials = oracle::monomials_of_degree(r->nvars(), degree);
  Polynomial<F> p(r);
  for (int t = 0; t < terms; ++t) {
    p += Polynomial<F>::monomial(r, monomials[rng() % monomials.size()], random_scalar(r->field(), rng));
  }
  return p;
}

Monomial random_monomial(Rng& rng, int nvars, int max_exponent) {
  std::vector<unsigned> e(nvars);
  for (auto& x : e) x = static_cast<unsigned>(rng() % (max_exponent + 1));
  return Monomial::from_exponents(e);
}

int sign(long v) { return (v > 0) - (v < 0); }

// Reference comparators written from the definitions.
int lex_reference(const Monomial& a, const Monomial& b, int n) {
  for (int i = 0; i < n; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] > b.e[i] ? 1 : -1;
  }
  return 0;
}

int grevlex_reference(const Monomial& a, const Monomial& b, int lo, int hi) {
  long da = 0, db = 0;
  for (int i = lo; i < hi; ++i) {
    da += a.e[i];
    db += b.e[i];
  }
  if (da != db) return da > db ? 1 : -1;
  for (int i = hi - 1; i >= lo; --i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i] ? 1 : -1;
  }
  return 0;
}

// Rank of the degree-d Macaulay matrix: the dimension of I_d.
std::size_t ideal_piece_rank(const std::vector<Polynomial<Q>>& gens, int n, int d) {
  auto columns = oracle::monomials_of_degree(n, d);
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    int dg = g.total_degree();
    if (dg > d) continue;
    for (const auto& m : oracle::monomials_of_degree(n, d - dg)) {
      auto row_poly = g.mul_term(m, mpq_class(1));
      std::vector<mpq_class> row(columns.size());
      for (const auto& t : row_poly.terms()) {
        for (std::size_t c = 0; c < columns.size(); ++c) {
          if (columns[c] == t.m) row[c] = t.c;
        }
      }
      rows.push_back(std::move(row));
    }
  }
  return static_cast<std::size_t>(oracle::rank(rows));
}

template <class F>
std::vector<Polynomial<F>> random_forms(const RingPtr<F>& r, Rng& rng, int count, int min_degree, int max_degree) {
  std::vector<Polynomial<F>> gens;
  while (static_cast<int>(gens.size()) < count) {
    int d = min_degree + static_cast<int>(rng() % (max_degree - min_degree + 1));
    auto g = random_form(r, rng, d, 3);
    if (!g.is_zero()) gens.push_back(g);
  }
  return gens;
}

Json without_run(const Report& r) {
  Json j = r.to_json();
  j.erase("run");
  return j;
}

}  // namespace

TEST_CASE("ring axioms and evaluation homomorphism on random polynomials") {
  Rng rng(20240611);
  int cases = 0;
  auto exercise = [&](const auto& ring) {
    using Poly = std::decay_t<decltype(random_poly(ring, rng, 1, 1))>;
    const auto& k = ring->field();
    for (int i = 0; i < 1500; ++i, ++cases) {
      Poly a = random_poly(ring, rng, 4, 3), b = random_poly(ring, rng, 4, 3), c = random_poly(ring, rng, 3, 2);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      CHECK(a + (-a) == Poly(ring));
      CHECK(a.pow(2) == a * a);
      if (!a.is_zero() && !b.is_zero()) CHECK((a * b).total_degree() == a.total_degree() + b.total_degree());
      std::vector<typename std::decay_t<decltype(k)>::Element> point;
      for (int v = 0; v < ring->nvars(); ++v) point.push_back(random_scalar(k, rng));
      CHECK((a * b).evaluate(point) == k.mul(a.evaluate(point), b.evaluate(point)));
      CHECK((a + c).evaluate(point) == k.add(a.evaluate(point), c.evaluate(point)));
      if (!b.is_zero()) {
        auto [quotient, remainder] = divide(a * b + c, b);
        CHECK(quotient * b + remainder == a * b + c);
      }
    }
  };
  exercise(Ring<PrimeField>::make(PrimeField(101), 3));
  exercise(Ring<PrimeField>::make(PrimeField(32003), 4, MonomialOrder::lex()));
  exercise(Ring<PrimeField>::make(PrimeField(2147483647), 3, MonomialOrder::block(1)));
  exercise(Ring<Q>::make(Q(), 3));
  exercise(Ring<Q>::make(Q(), 4, MonomialOrder::grevlex({1, 2, 1, 3})));
  exercise(Ring<Q>::make(Q(), 5, MonomialOrder::block(2)));
  exercise(Ring<Q>::make(Q(), 2, MonomialOrder::lex()));
  CHECK(cases >= 10000);
}

TEST_CASE("monomial orders are total, multiplicative well-orders matching their definitions") {
  Rng rng(7);
  const int n = 5;
  std::vector<MonomialOrder> orders = {MonomialOrder::grevlex(), MonomialOrder::lex(), MonomialOrder::block(2),
                                       MonomialOrder::block(3), MonomialOrder::grevlex({2, 1, 3, 1, 1})};
  int cases = 0;
  for (const auto& order : orders) {
    for (int i = 0; i < 2500; ++i, ++cases) {
      Monomial a = random_monomial(rng, n, 3), b = random_monomial(rng, n, 3), c = random_monomial(rng, n, 3);
      int ab = order.compare(a, b, n);
      CHECK(ab == -order.compare(b, a, n));
      CHECK((ab == 0) == (a == b));
      CHECK(sign(order.compare(a * c, b * c, n)) == sign(ab));
      if (!a.is_one()) CHECK(order.compare(a, Monomial(), n) > 0);
      if (ab < 0 && order.compare(b, c, n) < 0) CHECK(order.compare(a, c, n) < 0);
      if (a.divides(b) && a != b) CHECK(ab < 0);
      switch (order.kind()) {
        case OrderKind::Lex:
          CHECK(ab == lex_reference(a, b, n));
          break;
        case OrderKind::GRevLex:
          if (order.standard_graded()) {
            CHECK(ab == grevlex_reference(a, b, 0, n));
          } else if (order.weighted_degree(a, n) != order.weighted_degree(b, n)) {
            CHECK(sign(ab) == sign(order.weighted_degree(a, n) - order.weighted_degree(b, n)));
          }
          break;
        case OrderKind::Block: {
          int k = order.block_size();
          int first = grevlex_reference(a, b, 0, k);
          CHECK(ab == (first ? first : grevlex_reference(a, b, k, n)));
          break;
        }
      }
    }
  }
  CHECK(cases >= 10000);
}

TEST_CASE("Groebner membership and Hilbert functions agree with Macaulay matrices") {
  Rng rng(99);
  int cases = 0;
  for (int trial = 0; trial < 120; ++trial) {
    int n = 3 + trial % 2;
    auto ring = Ring<Q>::make(Q(), n, trial % 3 == 0 ? MonomialOrder::lex() : MonomialOrder::grevlex());
    auto gens = random_forms(ring, rng, 2 + static_cast<int>(rng() % 2), 1, 2);
    Ideal<Q> I(ring, gens);
    auto gb = I.groebner();
    int d = 2 + static_cast<int>(rng() % 2);
    Polynomial<Q> member(ring);
    for (const auto& g : gens) {
      if (g.total_degree() <= d) member += random_form(ring, rng, d - g.total_degree(), 2) * g;
    }
    CHECK(gb->contains(member));
    CHECK(oracle::macaulay_member(member, gens, d));
    // Homogeneous membership in degree d is decided by the degree-d Macaulay matrix.
    for (auto f : {random_form(ring, rng, d, 3), member + random_form(ring, rng, d, 1)}) {
      CHECK(gb->contains(f) == oracle::macaulay_member(f, gens, d));
    }
    for (const auto& g : gb->elements) CHECK(oracle::macaulay_member(g, gens, g.total_degree()));
    for (int e = 1; e <= 4; ++e) {
      CHECK(graded_piece_dimension(I, e) == mpz_class(static_cast<unsigned long>(ideal_piece_rank(gens, n, e))));
    }
    ++cases;
  }
  CHECK(cases >= 100);
}

TEST_CASE("saturation is idempotent and agrees between methods") {
  Rng rng(5);
  Fp k(32003);
  auto ring = projective_space(k, 3, "x");
  IdealP irrelevant(ring, {parse_polynomial(ring, "x0"), parse_polynomial(ring, "x1"), parse_polynomial(ring, "x2"),
                           parse_polynomial(ring, "x3")});
  for (int trial = 0; trial < 40; ++trial) {
    IdealP J(ring, random_forms(ring, rng, 2 + trial % 2, 1, 2));
    // An embedded component at the irrelevant ideal that saturation must remove.
    IdealP I = intersect(J, power(irrelevant, 3));
    IdealP S = saturate_irrelevant(I);
    CHECK(S.contains(I));
    CHECK(saturate_irrelevant(S).equals(S));
    CHECK(S.equals(saturate(I, irrelevant)));
    CHECK(S.equals(saturate_irrelevant(J)));
    auto l = linear_form(ring, random_vector(k, 4, rng));
    IdealP by_form = saturate_linear(I, l);
    CHECK(by_form.equals(saturate(I, l)));
    CHECK(saturate_linear(by_form, l).equals(by_form));
  }
}

TEST_CASE("Hilbert polynomials do not depend on the monomial order") {
  Rng rng(17);
  Fp k(32003);
  auto grevlex = Ring<Fp>::make(k, 4);
  std::vector<RingPtr<Fp>> others = {grevlex->with_order(MonomialOrder::lex()),
                                     grevlex->with_order(MonomialOrder::block(2)),
                                     grevlex->with_order(MonomialOrder::block(1))};
  for (int trial = 0; trial < 30; ++trial) {
    auto gens = random_forms(grevlex, rng, 1 + trial % 3, 1, 3);
    HilbertData h = hilbert(IdealP(grevlex, gens));
    for (const auto& r : others) {
      std::vector<PolyP> moved;
      for (const auto& g : gens) moved.push_back(g.in_ring(r));
      HilbertData h2 = hilbert(IdealP(r, moved));
      CHECK(h2.dimension == h.dimension);
      CHECK(h2.degree == h.degree);
      CHECK(h2.polynomial_string() == h.polynomial_string());
      for (long d = 0; d <= 5; ++d) CHECK(h2.function_value(d) == h.function_value(d));
    }
  }
}

TEST_CASE("pipeline maps compose with their inverses to the identity") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    Report q = verify_prop11(Q(), seed);
    REQUIRE(q.find("prop11.birational"));
    CHECK(q.find("prop11.birational")->status == Status::pass);
    CHECK(verify_prop11(Fp(10007), seed).all_passed());
  }
  for (std::uint64_t seed : {1, 2}) {
    Report report("build");
    BuildOptions opts;
    opts.seed = seed;
    auto bordiga = build_bordiga(opts, report);
    Rng rng(seed);
    auto st = construct_g(bordiga, rng, report, TowerOptions{});
    compute_sigma(st, rng, report, TowerOptions{});
    CHECK(round_trip(st.g.restricted(bordiga.ideal), st.f));

    auto palatini = build_palatini(opts, report);
    CHECK(round_trip(palatini.v.restricted(palatini.base_ideal), palatini.v_inverse));
    CHECK(report.all_passed());
  }
}

TEST_CASE("invariants agree across primes") {
  Json reference;
  for (std::uint32_t p : {32003u, 10007u, 65521u}) {
    Report report("build");
    BuildOptions opts;
    opts.prime = p;
    auto bordiga = build_bordiga(opts, report);
    Rng rng(p);
    auto st = construct_g(bordiga, rng, report, TowerOptions{});
    compute_sigma(st, rng, report, TowerOptions{});
    auto palatini = build_palatini(opts, report);
    int lines = 0, conics = 0;
    for (const auto& e : palatini.exceptional) (e.kind == "conic" ? conics : lines) += e.components;
    Json inv = {{"bordiga_X", hilbert(bordiga.ideal).polynomial_string()},
                {"C", st.C_hilbert.polynomial_string()},
                {"n", st.n},
                {"g", st.g.degree()},
                {"f", st.f.degree()},
                {"palatini_X", hilbert(palatini.ideal).polynomial_string()},
                {"palatini_v", palatini.v.degree()},
                {"exceptional_lines", lines},
                {"exceptional_conics", conics}};
    CHECK(report.all_passed());
    if (reference.is_null()) {
      reference = inv;
    } else {
      CHECK(inv == reference);
    }
  }
  CHECK(reference["exceptional_lines"] == 5);
  CHECK(reference["exceptional_conics"] == 2);
}

TEST_CASE("reports are reproducible for a fixed configuration") {
  RunConfig c;
  c.pipeline = "build";
  c.variety = "palatini";
  CHECK(without_run(run(c)) == without_run(run(c)));
  c.pipeline = "verify-prop11";
  c.rationals = true;
  c.seed = 3;
  CHECK(without_run(run(c)) == without_run(run(c)));
}
