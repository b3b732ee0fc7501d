// Convex bodies: zonotopes, centrally symmetric polytopes, smooth sums of
// ellipsoids, signed combinations of their support functions, and two-sided
// volume bounds for geometric means of bodies.

#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <variant>
#include <vector>

#include "logbm/arith.hpp"
#include "logbm/hull.hpp"

namespace logbm {

/// The segment [-weight * direction, weight * direction].
struct Generator {
  Vec direction;
  Scalar weight;
};

/// Minkowski sum of centred segments, kept in canonical form: directions are
/// sign-normalised primitive integer vectors (unit vectors on the float
/// backend), parallel generators are merged, weights are positive. Generators
/// keep the order of their first appearance.
class Zonotope {
 public:
  Zonotope(std::size_t dim, std::vector<Generator> generators);
  static Zonotope segment(const Vec& u, const Scalar& weight = Scalar(1));
  /// The box [-s_1, s_1] x ... x [-s_n, s_n].
  static Zonotope box(std::span<const Scalar> half_widths);
  static Zonotope cube(std::size_t dim) { return box(std::vector<Scalar>(dim, Scalar(1))); }

  std::size_t dim() const { return dim_; }
  const std::vector<Generator>& generators() const { return generators_; }
  std::size_t rank() const;
  bool full_dimensional() const { return rank() == dim_; }
  bool is_exact() const;

  Zonotope scaled(const Scalar& s) const;
  friend Zonotope operator+(const Zonotope& a, const Zonotope& b);
  /// Same generator multiset regardless of order.
  bool same_body(const Zonotope& other) const;
  friend bool operator==(const Zonotope& a, const Zonotope& b) {
    return a.dim_ == b.dim_ && a.generators_.size() == b.generators_.size() &&
           std::equal(a.generators_.begin(), a.generators_.end(), b.generators_.begin(),
                      [](const Generator& x, const Generator& y) {
                        return x.direction == y.direction && x.weight == y.weight;
                      });
  }

  /// All sums of +-weight_i * direction_i (2^m points, a superset of the vertices).
  std::vector<Vec> sign_vertices() const;

 private:
  std::size_t dim_;
  std::vector<Generator> generators_;
};

/// conv{+-v_i}. One representative per antipodal pair; duplicate pairs removed.
class SymmetricPolytope {
 public:
  SymmetricPolytope(std::size_t dim, std::vector<Vec> vertex_pairs);
  static SymmetricPolytope cross_polytope(std::size_t dim);

  std::size_t dim() const { return dim_; }
  const std::vector<Vec>& vertex_pairs() const { return pairs_; }
  /// v_0, -v_0, v_1, -v_1, ...
  std::vector<Vec> points() const;
  SymmetricPolytope scaled(const Scalar& s) const;
  bool full_dimensional() const;
  friend bool operator==(const SymmetricPolytope& a, const SymmetricPolytope& b) {
    return a.dim_ == b.dim_ && a.pairs_ == b.pairs_;
  }

 private:
  std::size_t dim_;
  std::vector<Vec> pairs_;
};

/// Support function h(x) = sum_i sqrt(x^T A_i x), A_i symmetric positive
/// definite: a sum of centred ellipsoids, hence a smooth zonoid.
class SmoothBody {
 public:
  SmoothBody(std::size_t dim, std::vector<Matrix> matrices);
  std::size_t dim() const { return dim_; }
  const std::vector<Matrix>& matrices() const { return matrices_; }
  friend bool operator==(const SmoothBody& a, const SmoothBody& b) {
    return a.dim_ == b.dim_ && a.matrices_ == b.matrices_;
  }

 private:
  std::size_t dim_;
  std::vector<Matrix> matrices_;
};

using Body = std::variant<Zonotope, SymmetricPolytope, SmoothBody>;

std::size_t body_dim(const Body& b);
const char* body_kind(const Body& b);
/// Same body with every coordinate moved to backend b (smooth bodies are kept).
Body to_backend(const Body& b, Backend backend);

/// Signed combination sum_j coeff_j * h_{body_j}.
struct SupportTerm {
  Scalar coeff;
  std::shared_ptr<const Body> body;
};

class SupportExpr {
 public:
  SupportExpr() = default;
  static SupportExpr of(const Body& b, const Scalar& coeff = Scalar(1));
  SupportExpr& add(const Body& b, const Scalar& coeff);
  SupportExpr& add(const SupportExpr& other, const Scalar& coeff = Scalar(1));

  const std::vector<SupportTerm>& terms() const { return terms_; }
  std::size_t dim() const;

 private:
  std::vector<SupportTerm> terms_;
};

/// h_K(x) = max over K of <z, x>. Exact for zonotopes and polytopes with exact
/// data; smooth bodies are evaluated on the float backend only.
Scalar support_eval(const Zonotope& z, const Vec& x);
Scalar support_eval(const SymmetricPolytope& p, const Vec& x);
Scalar support_eval(const SmoothBody& s, const Vec& x);
Scalar support_eval(const Body& b, const Vec& x);
Scalar support_eval(const SupportExpr& f, const Vec& x);

/// Vertices of the face of the body exposed by direction x.
std::vector<Vec> contact_face(const Body& b, const Vec& x);

/// Facets of the polytope; facet point indices refer to P.points().
ConvexHull hull_facets(const SymmetricPolytope& p);
/// Exact volume (pyramids over triangulated facets).
Scalar polytope_volume(const SymmetricPolytope& p);
/// Exact vertex set of a zonotope or polytope body.
std::vector<Vec> body_vertices(const Body& b);

/// Volume bounds for the geometric mean K^(1-t) L^t.
struct GeoMeanBounds {
  Scalar lower;
  Scalar upper;
  std::size_t halfspaces = 0;
  std::size_t inner_points = 0;
};

/// upper: volume of {z : <z, w> <= h_K(w)^(1-t) h_L(w)^t, w in +-directions},
/// with right-hand sides rounded outward when irrational. lower: volume of the
/// hull of points certified inside lambda^t K cap lambda^(t-1) L, which lies in
/// the geometric mean for every lambda > 0; one such set per direction. Throws
/// DegenerateInput if the sampled intersection is unbounded.
GeoMeanBounds geomean_volume_bounds(const Body& k, const Body& l, const Scalar& t, std::span<const Vec> directions);

/// Primitive integer directions with coordinates in [-radius, radius], one per
/// antipodal pair.
std::vector<Vec> lattice_directions(std::size_t dim, int radius);

}  // namespace logbm
