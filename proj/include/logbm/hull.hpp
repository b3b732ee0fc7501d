// Exact convex hulls of small rational point sets.
//
// Facets are found by gift wrapping: an initial facet is lifted from a facet
// of the coordinate projection, and every other facet is reached by rotating
// a known facet about one of its ridges. Ridges come from the hull of the
// facet itself, one dimension down. All predicates are evaluated on integer
// coordinates (common denominator cleared), in 128-bit arithmetic when the
// coordinates are small enough and in GMP integers otherwise.

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "logbm/arith.hpp"

namespace logbm {

class DegenerateInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct HullFacet {
  Vec normal;                       // primitive integer outward normal
  Scalar offset;                    // max over the points of <normal, p>
  std::vector<std::size_t> points;  // indices of the input points on the facet
};

struct ConvexHull {
  std::size_t dim = 0;
  std::vector<HullFacet> facets;      // sorted by normal, lexicographically
  std::vector<std::size_t> vertices;  // extreme points; first index among duplicates
};

/// Hull of a full-dimensional exact point set. Throws DegenerateInput when the
/// affine hull of the points is not all of R^dim.
ConvexHull convex_hull(std::span<const Vec> points);

/// Exact volume of the convex hull, by coning from one point over a recursive
/// triangulation of the facets.
Scalar hull_volume(std::span<const Vec> points);

/// Affine dimension of a point set (-1 for the empty set).
int affine_dimension(std::span<const Vec> points);

}  // namespace logbm
