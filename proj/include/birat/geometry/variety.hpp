#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "birat/geometry/linalg.hpp"
#include "birat/ideal/operations.hpp"

namespace birat {

// A linear subspace of P^n, held both as independent vanishing forms and as a
// basis of spanning points.
template <class F>
class LinearSubspace {
 public:
  static LinearSubspace from_forms(const RingPtr<F>& ring, const std::vector<Polynomial<F>>& forms);
  static LinearSubspace from_points(const RingPtr<F>& ring, const Mat<F>& points);
  static LinearSubspace random(const RingPtr<F>& ring, int dimension, Rng& rng);

  const RingPtr<F>& ring() const { return ring_; }
  const std::vector<Polynomial<F>>& forms() const { return forms_; }
  const Mat<F>& points() const { return points_; }
  int dimension() const { return static_cast<int>(points_.size()) - 1; }
  Ideal<F> ideal() const { return Ideal<F>(ring_, forms_); }
  bool contains(const Vec<F>& point) const;
  // x = sum_i t_i points[i], as forms in param_ring (dimension + 1 variables).
  std::vector<Polynomial<F>> parametrization(const RingPtr<F>& param_ring) const;

 private:
  RingPtr<F> ring_;
  std::vector<Polynomial<F>> forms_;
  Mat<F> points_;
};

// A closed subscheme of projective space given by a saturated homogeneous ideal.
template <class F>
class Variety {
 public:
  Variety() = default;
  explicit Variety(Ideal<F> saturated_ideal) : ideal_(std::move(saturated_ideal)) {}
  static Variety saturating(const Ideal<F>& I) { return Variety(saturate_irrelevant(I)); }

  const Ideal<F>& ideal() const { return ideal_; }
  const RingPtr<F>& ring() const { return ideal_.ring(); }
  const HilbertData& hilbert() const;
  int dimension() const { return hilbert().dimension; }
  std::int64_t degree() const { return hilbert().degree; }
  std::int64_t arithmetic_genus() const { return hilbert().arithmetic_genus(); }
  bool is_empty() const { return dimension() < 0; }

 private:
  Ideal<F> ideal_;
  mutable std::shared_ptr<const HilbertData> hilbert_;
};

// A rational map P^n -> P^m given by forms of one common degree, optionally
// restricted to a subvariety of the source (its ideal is `domain`).
template <class F>
struct RationalMap {
  RingPtr<F> source;
  RingPtr<F> target;
  std::vector<Polynomial<F>> forms;
  std::optional<Ideal<F>> domain;

  RationalMap() = default;
  RationalMap(RingPtr<F> source, RingPtr<F> target, std::vector<Polynomial<F>> forms,
              std::optional<Ideal<F>> domain = std::nullopt);
  int degree() const { return forms.empty() ? -1 : forms.front().total_degree(); }
  RationalMap restricted(const Ideal<F>& d) const { return RationalMap(source, target, forms, d); }
  Vec<F> evaluate(const Vec<F>& point) const;
};

template <class F>
RingPtr<F> projective_space(const F& field, int n, const std::string& prefix);

template <class F>
RationalMap<F> identity_map(const RingPtr<F>& ring);

// Ideal of a point given by homogeneous coordinates.
template <class F>
Ideal<F> point_ideal(const RingPtr<F>& ring, const Vec<F>& point);

// Linear change of coordinates moving `point` to (1:0:...:0). Returns the images
// of the old coordinates in the new ones and of the new coordinates in the old ones.
template <class F>
std::pair<std::vector<Polynomial<F>>, std::vector<Polynomial<F>>> move_point_to_first(const RingPtr<F>& ring,
                                                                                       const Vec<F>& point);

template <class F>
struct SegreData {
  RingPtr<F> product;  // variables x_0..x_a then y_0..y_b
  RingPtr<F> target;   // z_{ij} indexed i * (b + 1) + j
  RationalMap<F> map;
  Variety<F> image;
};

template <class F>
SegreData<F> segre_embed(const F& field, int a, int b);

// Projection from a linear center, given by its vanishing forms.
template <class F>
RationalMap<F> linear_projection(const LinearSubspace<F>& center, const std::string& target_prefix = "w");

// Divides a tuple by the gcd of its entries, after reduction modulo `domain` when given.
template <class F>
std::vector<Polynomial<F>> reduce_tuple(std::vector<Polynomial<F>> forms, const std::optional<Ideal<F>>& domain);

// outer o inner, reduced; throws when the composite vanishes on the source.
template <class F>
RationalMap<F> compose(const RationalMap<F>& outer, const RationalMap<F>& inner);

// Closure of the image through the graph with a scaling variable (x, t f(x)).
template <class F>
Variety<F> image_closure(const RationalMap<F>& map);

// Forms of degree <= max_degree vanishing on the image, from the kernel of
// F -> F(map) modulo the domain ideal.
template <class F>
Ideal<F> implicitize(const RationalMap<F>& map, int max_degree);

// Relations sum_i c_i(y) x_i = 0 holding on the graph; each row lists c_0..c_n.
template <class F>
using LinearRelations = std::vector<std::vector<Polynomial<F>>>;

// Graph relations of x-degree one, from a block basis of the graph ideal.
template <class F>
LinearRelations<F> graph_linear_relations(const RationalMap<F>& map);

// Inverse from linear relations: rows of least degree that are independent at a
// random target point, signed maximal minors, gcd reduction.
template <class F>
RationalMap<F> inverse_from_relations(const LinearRelations<F>& relations, const RingPtr<F>& source_ring,
                                      const RingPtr<F>& target_ring, Rng& rng);

// Inverts a map onto a full projective space and certifies the result by the
// round trip on both sides.
template <class F>
RationalMap<F> invert_birational(const RationalMap<F>& map, Rng& rng);

// forms proportional to the coordinate tuple modulo the ideal (all 2x2 minors reduce to 0).
template <class F>
bool proportional_to_identity(const std::vector<Polynomial<F>>& forms, const std::optional<Ideal<F>>& domain = {});

template <class F>
bool proportional(const std::vector<Polynomial<F>>& a, const std::vector<Polynomial<F>>& b,
                  const std::optional<Ideal<F>>& domain = {});

// inverse o map restricted to map's domain and map o inverse on the target.
template <class F>
bool round_trip(const RationalMap<F>& map, const RationalMap<F>& inverse);

template <class F>
Ideal<F> base_locus(const RationalMap<F>& map);

template <class F>
Ideal<F> singular_locus(const Variety<F>& v);

// Multiplicity of a curve at a point via lengths on random planes through it.
template <class F>
long multiplicity_at_point(const Variety<F>& curve, const Vec<F>& point, Rng& rng, int planes = 3);

template <class F>
Variety<F> cone_from_point(const Variety<F>& v, const Vec<F>& vertex);

// I is contained in the k-th infinitesimal neighbourhood ideal sub^(k+1).
template <class F>
bool contains_neighborhood(const Ideal<F>& I, const Ideal<F>& sub, int k);

// Lowest-degree part at the point, re-embedded as a cone form with vertex there.
template <class F>
Polynomial<F> tangent_cone_at_point(const Polynomial<F>& f, const Vec<F>& point);

// Tangent cone ideal of a subscheme at a point, as a cone with vertex there.
template <class F>
Ideal<F> tangent_cone_ideal(const Ideal<F>& I, const Vec<F>& point);

// The projectivized tangent cone at the point: a scheme in P^{n-1} whose length is
// the multiplicity there.
template <class F>
Ideal<F> tangent_directions(const Ideal<F>& I, const Vec<F>& point);

// Number of distinct points of a zero-dimensional scheme equals its length.
template <class F>
bool zero_dim_reduced(const Ideal<F>& I, Rng& rng);

template <class F>
std::string map_to_text(const RationalMap<F>& map);

}  // namespace birat
