#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "birat/geometry/variety.hpp"
#include "birat/pipelines/report.hpp"

namespace birat {

using Fp = PrimeField;
using PolyP = Polynomial<Fp>;
using IdealP = Ideal<Fp>;
using MapP = RationalMap<Fp>;

// A random draw that misses the genericity a construction needs; callers redraw.
struct DegenerateDraw : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A curve on the base surface contracted by v, grouped by F_p-rational component:
// either one rational line or conic, or several conjugate lines sharing one delta.
struct ExceptionalCurve {
  std::string kind;  // "line", "lines" or "conic"
  int components = 1;
  IdealP on_base;  // the curve on V
  IdealP image;    // its image points under v in P^2
  IdealP preimage;  // u^{-1} of the curve on X
  std::int64_t preimage_degree = 0;
  std::int64_t delta = 0;  // degree of u^{-1} of one component
};

struct ScrollInstance {
  std::string name;  // "bordiga" or "palatini"
  std::uint64_t seed = 0;  // the seed of the successful draw
  Fp field{2};
  RingPtr<Fp> ambient;  // P^5, variables x
  IdealP ideal;         // saturated I_X
  std::int64_t degree = 0;
  RingPtr<Fp> base;     // coordinates m of the space containing V
  IdealP base_ideal;    // I_V (zero for P^2)
  RingPtr<Fp> plane;    // P^2 target of v, variables s
  // Rows c(m) with sum_j c_j(m) x_j = 0 cutting out the scroll line over m.
  LinearRelations<Fp> fiber_relations;
  MapP u;  // X -> V
  MapP v;  // V -> P^2
  MapP v_inverse;
  MapP h;  // v o u
  std::vector<ExceptionalCurve> exceptional;
  PolyMat<Fp> matrix;          // the 4x3 linear matrix, or the 6x4 matrix with columns A_k x
  std::vector<Mat<Fp>> skew;   // the four skew matrices (Palatini)
  std::string mode;
};

struct BuildOptions {
  std::uint32_t prime = 32003;
  std::uint64_t seed = 1;
  int retries = 3;
  std::string mode = "two-skew-lines";  // Palatini v construction
};

// Draws the scroll and records its construction checks. Retries with seed + k
// when a draw is degenerate; throws once the budget is spent.
ScrollInstance build_bordiga(const BuildOptions& opts, Report& report);
ScrollInstance build_palatini(const BuildOptions& opts, Report& report);

// The union of the scroll lines over a subscheme Z of the base: incidence in
// (x, m), then elimination of m. Saturated, in the ambient ring.
IdealP scroll_preimage(const ScrollInstance& inst, const IdealP& Z, Rng& rng);

// F_p-rational lines of the Bordiga scroll lying over conics of P^2; projection
// from such a line is birational onto P^3.
std::vector<IdealP> lines_over_conics(const ScrollInstance& inst);

// The subspace {rows(point) x = 0}: the scroll line over a point of V.
IdealP fiber_over(const ScrollInstance& inst, const Vec<Fp>& point);

// Two skew 6x6 matrices spanning a pencil whose members are all singular, from
// the linear conditions A a0 = 0, B a1 = 0, A a1 + B a0 = 0.
std::pair<Mat<Fp>, Mat<Fp>> singular_skew_pencil(const Fp& k, Rng& rng);

// Lines of P^3 over F_p contained in the surface f = 0, by exhaustion (small p only).
std::vector<IdealP> lines_on_surface(const PolyP& f);

// A rational point of the hypersurface f = 0 on a random line, when one is found.
std::optional<Vec<Fp>> rational_point_on_hypersurface(const PolyP& f, Rng& rng, int attempts = 200);

}  // namespace birat
