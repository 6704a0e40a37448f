#include "birat/pipelines/run.hpp"

namespace birat {

void compose_cremona(const ScrollInstance& inst, Rng& rng, Report& report, bool line_in_lambda, int retries) {
  const Fp& k = inst.field;
  // L' is a line of X over a conic of P^2: a scroll line projects 3:1 and a line
  // over a jumping line 2:1.
  auto candidates = lines_over_conics(inst);
  report.record("rational_conic_lines", static_cast<long>(candidates.size()));
  if (candidates.empty()) throw DegenerateDraw("no F_p-rational line over a conic");
  IdealP line = candidates.front();
  Mat<Fp> rows;
  for (const auto& g : line.generators()) rows.push_back(linear_coefficients(g));
  Mat<Fp> line_points = nullspace(k, rows, inst.ambient->nvars());
  auto over = image_closure(inst.u.restricted(line));
  report.expect("cremona.L_prime", "L' is a line of X over a conic", "a suitable line L' on X",
                Json{{"on_X", true}, {"u_image_degree", 2}},
                Json{{"on_X", line.contains(inst.ideal)}, {"u_image_degree", over.degree()}});
  report.artifact("L_prime", ideal_to_text(line));

  TowerOptions opts;
  opts.retries = retries;
  if (line_in_lambda) opts.line_in_lambda = line_points;
  auto st = construct_g(inst, rng, report, opts);
  compute_sigma(st, rng, report, opts);
  bool meets = !saturate_irrelevant(sum(line, st.lambda.ideal())).is_unit();
  report.expect("cremona.L_prime_position", line_in_lambda ? "L' lies in Lambda" : "L' misses Lambda",
                "position of L' and Lambda", line_in_lambda, line_in_lambda ? line.contains(st.lambda.ideal()) : meets);

  auto projection = linear_projection(LinearSubspace<Fp>::from_forms(inst.ambient, line.generators()), "y")
                        .restricted(inst.ideal);
  MapP f_prime, T, T_inverse;
  {
    PhaseTimer timer(report, "projection inverse");
    f_prime = invert_birational(projection, rng);
  }
  report.expect_true("cremona.projection_birational", "projection from L' is birational with inverse f'",
                     "f'^-1 = projection from L'", round_trip(projection, f_prime));
  report.record("f_prime_degree", f_prime.degree());
  report.artifact("f_prime", map_to_text(f_prime));
  {
    PhaseTimer timer(report, "composite");
    T = compose(st.g, f_prime);
    T_inverse = compose(projection, st.f);
  }
  {
    PhaseTimer timer(report, "composite round trip");
    report.expect_true("cremona.round_trip", "T^-1 o T and T o T^-1 are the identity", "T in the Cremona group",
                       round_trip(T, T_inverse));
  }
  report.artifact("T", map_to_text(T));
  Json expected = line_in_lambda ? Json{{"T", 3}, {"T_inverse", 3}} : Json{{"T", 7}, {"T_inverse", 5}};
  report.expect("cremona.type", line_in_lambda ? "T is a cubo-cubic transformation" : "T is of type (7,5)",
                line_in_lambda ? "cubo-cubic transformation" : "T of type (7,5)", expected,
                Json{{"T", T.degree()}, {"T_inverse", T_inverse.degree()}});
  if (!line_in_lambda) {
    auto image = image_closure(st.g.restricted(line));
    auto hp = image.hilbert();
    report.expect("cremona.twisted_cubic", "g(L') is a twisted cubic", "g(L') a skew cubic",
                  Json{{"dim", 1}, {"deg", 3}, {"p_a", 0}},
                  Json{{"dim", hp.dimension}, {"deg", hp.degree}, {"p_a", hp.arithmetic_genus()}});
  }
}

}  // namespace birat
