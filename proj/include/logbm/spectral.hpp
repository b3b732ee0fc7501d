// Numerical side: the Hilbert operator of a planar body on a uniform circle
// grid, planar generating measures, and quadrature of the quadratic forms of
// the operator on S^2 for sums of ellipsoids.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "logbm/bodies.hpp"
#include "logbm/inequalities.hpp"

namespace logbm {

/// A = h (f'' + f) / (h'' + h) on N equispaced angles, self-adjoint for
/// mu = (h'' + h) / (2h) dtheta. Stored in the symmetrized form
/// C = M^(-1/2) B M^(-1/2), with B the quadratic form and M the mass matrix.
class CircleOperator {
 public:
  /// Smooth planar body: h and h + h'' in closed form.
  CircleOperator(const SmoothBody& k, std::size_t n);
  /// Samples of h at theta_j = 2 pi j / N; h'' by centered differences.
  static CircleOperator from_samples(std::vector<double> h);

  std::size_t size() const { return h_.size(); }
  const std::vector<double>& h() const { return h_; }
  const std::vector<double>& curvature_radius() const { return rho_; }
  /// mu weights at the nodes.
  const Eigen::VectorXd& mass() const { return mass_; }
  const Eigen::MatrixXd& symmetrized() const { return c_; }

  /// A f at the nodes (spectral second derivative).
  Eigen::VectorXd apply(const Eigen::VectorXd& f) const;
  /// Discrete L^2(mu) inner product.
  double inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const;

  /// Blocks of C on functions with f(theta + pi) = +-f(theta).
  Eigen::MatrixXd even_block() const;
  Eigen::MatrixXd odd_block() const;

 private:
  CircleOperator(std::vector<double> h, std::vector<double> rho);
  std::vector<double> h_;
  std::vector<double> rho_;
  Eigen::MatrixXd d2_;
  Eigen::VectorXd mass_;
  Eigen::MatrixXd c_;
};

/// The spectral second-derivative matrix on N equispaced points (N even).
Eigen::MatrixXd periodic_second_derivative(std::size_t n);

struct Eigenpair {
  double value;
  bool even;
};

/// All eigenvalues, sorted decreasingly, with parity labels.
std::vector<Eigenpair> circle_spectrum(const CircleOperator& op);
/// Eigenvalues of one parity block, sorted decreasingly.
std::vector<double> circle_block_spectrum(const CircleOperator& op, bool even);

/// Generating measure of a symmetric polygon from its surface area measure:
/// each atom w becomes the generator w rotated clockwise by pi/2 with a
/// quarter of its mass. The result is the polygon as a zonotope.
Zonotope planar_generating_measure(const AtomicSphericalMeasure& s);
/// Same for a smooth planar body, discretized on N angles (float backend).
Zonotope planar_generating_measure(const SmoothBody& k, std::size_t n);

/// Icosahedral mesh refined `level` times. The centroid rule puts one node per
/// triangle (normalized centroid) with the exact spherical triangle area as
/// weight; it is second order. The seven-point rule maps a degree-5 planar
/// triangle rule radially onto the sphere, with the Jacobian in the weights.
class SphereQuadrature {
 public:
  enum class Rule { kCentroid, kSevenPoint };
  explicit SphereQuadrature(int level, Rule rule = Rule::kCentroid);
  Rule rule() const { return rule_; }
  int level() const { return level_; }
  std::size_t size() const { return nodes_.size(); }
  const std::vector<std::array<double, 3>>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  int level_;
  Rule rule_;
  std::vector<std::array<double, 3>> nodes_;
  std::vector<double> weights_;
};

/// Value and restricted Hessian (2 x 2, in a tangent basis at x) of a signed
/// sum of smooth support functions at a unit vector x in R^3.
struct SecondOrderJet {
  double value;
  Eigen::Matrix2d hessian;
};
SecondOrderJet smooth_jet(const SupportExpr& f, const std::array<double, 3>& x);

struct QuadraticForms {
  double aa = 0;      // <A f, A f>
  double fa = 0;      // <f, A f> as (1/3) int f D(F, H)
  double fa_alt = 0;  // <f, A f> as (1/3) int h D(F, F)
  double ff = 0;      // <f, f>
  double kk = 0;      // <h_K, A h_K> = Vol(K)
};

/// All quadratic forms of A_K at f by quadrature; throws if H is not
/// positive definite at a node.
QuadraticForms quadratic_forms(const SupportExpr& k, const SupportExpr& f, const SphereQuadrature& q);

struct BochnerResidual {
  double side1 = 0;  // <Af, Af> - <f, Af>
  double side2 = 0;  // int (h/3) { D(F,H)^2 / det H - det F }
  double residual = 0;
  bool integrand_nonnegative = true;
};

BochnerResidual bochner_residual(const SmoothBody& k, const SupportExpr& f, const SphereQuadrature& q);

/// <Af, Af> >= (1/2) <f, Af> + (1/2) <f, f> on S^2, with the deficit compared
/// against `tolerance`.
InequalityReport check_superlich_quadrature(const SmoothBody& k, const SupportExpr& f, const SphereQuadrature& q,
                                            double tolerance);

/// f = h_L - a h_K with a = <h_L, h_K> / <h_K, h_K> in L^2(mu_K).
SupportExpr orthogonalized_difference(const SmoothBody& k, const SmoothBody& l, const SphereQuadrature& q);

}  // namespace logbm
