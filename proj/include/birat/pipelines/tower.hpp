#pragma once

#include <optional>

#include "birat/pipelines/scroll.hpp"

namespace birat {

struct TowerOptions {
  int retries = 3;
  // Forces the scroll line through these two points into Lambda.
  std::optional<Mat<Fp>> line_in_lambda;
  // Independent inverse through the graph of g (affordable for Bordiga).
  bool graph_inverse = false;
  // Full two-sided round trip of g and f.
  bool full_round_trip = false;
  // B2 as the image of E_inf through implicitization up to this degree (0 disables).
  int b2_image_degree = 0;
  // Characteristic curve law on two random members of |Sigma|.
  bool characteristic_curve = false;
};

// The map tower X -> P^2 x P^1 -> P^3 and the loci it produces.
struct ConstructionState {
  const ScrollInstance* inst = nullptr;
  PolyP l1, l2;  // Lambda = {l1 = l2 = 0}
  LinearSubspace<Fp> lambda;
  RingPtr<Fp> section_ring;  // P^3 parametrizing Lambda
  std::vector<PolyP> param;
  IdealP C;
  HilbertData C_hilbert;
  Variety<Fp> gamma;  // h(C) in P^2
  std::int64_t n = 0;
  IdealP uC;  // u(C) on V

  SegreData<Fp> segre;
  MapP alpha;  // X -> P^2 x P^1 in Segre coordinates
  MapP pi_L;
  RingPtr<Fp> p3;  // variables w
  MapP g;
  MapP f;
  Vec<Fp> P;
  IdealP mP;
  IdealP B1;
  std::vector<IdealP> Bi;  // lines over the exceptional points, as cones from P

  IdealP base;  // saturated base scheme of |Sigma|
  IdealP E_inf;
  std::int64_t deg_E_inf = 0;
  IdealP B2;
  std::int64_t deg_B2 = 0;
  long mult_P = 0;
};

ConstructionState construct_g(const ScrollInstance& inst, Rng& rng, Report& report, const TowerOptions& opts);

// f = g^-1 from the scroll-line relations over v^-1(w) cut by the hyperplane pencil,
// certified against g.
void compute_sigma(ConstructionState& st, Rng& rng, Report& report, const TowerOptions& opts);

// Base scheme of |Sigma|, its components and the numerical cross-routes.
void analyze_sigma(ConstructionState& st, Rng& rng, Report& report, const TowerOptions& opts);

// Members of |Sigma| from hyperplanes through Lambda split as the cone Phi times a
// plane through B1.
void verify_split_surfaces(ConstructionState& st, Rng& rng, Report& report);

}  // namespace birat
