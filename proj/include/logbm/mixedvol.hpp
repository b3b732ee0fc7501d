// Exact mixed volumes and atomic mixed area measures for slot lists made of
// zonotopes (segments included) and at most one polytope per measure.
//
// Atoms are stored as (w, c) meaning mass c * |w| at the unit direction
// w / |w|. With w integer, every integral of a 1-homogeneous function g
// against the measure is sum c * g(w), a rational number.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "logbm/arith.hpp"
#include "logbm/bodies.hpp"

namespace logbm {

class UnsupportedCombination : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// kScaled: atom (w, c) has mass c * |w| (mixed area measures).
/// kDirect: atom (w, c) has mass c (density-weighted measures such as cone
/// volume measures, whose masses are rational while c * |w| would not be).
enum class MassEncoding { kScaled, kDirect };

struct Atom {
  Vec w;
  Scalar c;
};

struct VecLess {
  bool operator()(const Vec& a, const Vec& b) const { return lex_less(a, b); }
};

class AtomicSphericalMeasure {
 public:
  explicit AtomicSphericalMeasure(std::size_t dim, MassEncoding encoding = MassEncoding::kScaled)
      : dim_(dim), encoding_(encoding) {}

  /// Adds an atom, rescaling w to its primitive direction and merging.
  void add(const Vec& w, const Scalar& c);

  std::size_t dim() const { return dim_; }
  MassEncoding encoding() const { return encoding_; }
  /// Nonzero atoms sorted by direction.
  std::vector<Atom> atoms() const;
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  bool is_even() const;

  /// Integral of a 1-homogeneous g: sum c * g(w). kScaled only.
  Scalar integrate(const std::function<Scalar(const Vec&)>& g) const;
  /// Sum of masses. Exact for kDirect; kScaled needs the float backend.
  Scalar total_mass() const;
  /// The measure g * this, as kDirect atoms (g 1-homogeneous). kScaled only.
  AtomicSphericalMeasure weighted(const std::function<Scalar(const Vec&)>& g) const;

  AtomicSphericalMeasure& operator+=(const AtomicSphericalMeasure& o);
  AtomicSphericalMeasure scaled(const Scalar& s) const;
  friend bool operator==(const AtomicSphericalMeasure& a, const AtomicSphericalMeasure& b);

 private:
  std::size_t dim_;
  MassEncoding encoding_;
  std::map<Vec, Scalar, VecLess> atoms_;
};

using Slot = std::variant<Zonotope, SymmetricPolytope>;

/// V(K_1, ..., K_n). All-zonotope slots use (2^n / n!) sum prod(lambda) |det|;
/// otherwise one polytope slot is integrated against the mixed area measure of
/// the others. Throws UnsupportedCombination for three or more polytope slots.
Scalar mixed_volume(std::span<const Slot> slots);

/// S_{K_1, ..., K_{n-1}} as atoms. At most one polytope slot.
AtomicSphericalMeasure mixed_area_measure(std::span<const Slot> slots);

/// Vol(Z) = V(Z, ..., Z) by the determinant formula.
Scalar zonotope_volume(const Zonotope& z);
/// Exact volume of a zonotope or polytope body.
Scalar body_volume(const Body& b);
/// Converts zonotope and polytope bodies to slots; smooth bodies are rejected.
Slot to_slot(const Body& b);

/// dV_K = (1/n) h_K dS_{K,...,K}, kDirect encoding; total mass Vol(K).
AtomicSphericalMeasure cone_volume_measure(const Zonotope& k);

struct ProjectionCheck {
  bool equal = false;
  Scalar lhs;  // (n/2) V([-u,u], C_1, ..., C_{n-1})
  Scalar rhs;  // |u| V(P C_1, ..., P C_{n-1}) computed inside u-perp
};

/// Both sides of the projection formula; the right side is computed from Gram
/// determinants of projected generators rather than determinants in R^n.
ProjectionCheck projection_identity_check(const Vec& u, std::span<const Slot> slots);

}  // namespace logbm
