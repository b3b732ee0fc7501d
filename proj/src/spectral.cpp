#include "logbm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace logbm {

namespace {

constexpr double kPi = std::numbers::pi;

void require_even_grid(std::size_t n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("circle grid size must be even and at least 4");
}

std::vector<std::vector<double>> matrices_of(const SmoothBody& k) {
  std::vector<std::vector<double>> out;
  for (const auto& a : k.matrices()) {
    std::vector<double> m;
    for (const auto& row : a)
      for (const auto& x : row) m.push_back(x.to_double());
    out.push_back(std::move(m));
  }
  return out;
}

using Vec3 = std::array<double, 3>;

Vec3 normalized(const Vec3& v) {
  double r = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  return {v[0] / r, v[1] / r, v[2] / r};
}

double dot3(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 cross3(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Solid angle of the spherical triangle with unit vertices a, b, c.
double spherical_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  double num = std::abs(dot3(a, cross3(b, c)));
  double den = 1 + dot3(a, b) + dot3(b, c) + dot3(c, a);
  return 2 * std::atan2(num, den);
}

double mixed_det(const Eigen::Matrix2d& a, const Eigen::Matrix2d& b) {
  return ((a + b).determinant() - a.determinant() - b.determinant()) / 2;
}

}  // namespace

Eigen::MatrixXd periodic_second_derivative(std::size_t n) {
  require_even_grid(n);
  const double h = 2 * kPi / static_cast<double>(n);
  Eigen::MatrixXd d(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) {
        d(i, j) = -kPi * kPi / (3 * h * h) - 1.0 / 6;
      } else {
        long k = static_cast<long>(i) - static_cast<long>(j);
        double s = std::sin(static_cast<double>(k) * h / 2);
        d(i, j) = -((k % 2 == 0) ? 1.0 : -1.0) / (2 * s * s);
      }
    }
  }
  return d;
}

CircleOperator::CircleOperator(const SmoothBody& k, std::size_t n) {
  if (k.dim() != 2) throw std::invalid_argument("circle operator needs a planar body");
  require_even_grid(n);
  auto mats = matrices_of(k);
  std::vector<double> h(n), rho(n);
  for (std::size_t j = 0; j < n; ++j) {
    double th = 2 * kPi * static_cast<double>(j) / static_cast<double>(n);
    double c = std::cos(th), s = std::sin(th);
    for (const auto& a : mats) {
      double q = a[0] * c * c + 2 * a[1] * c * s + a[3] * s * s;
      double det = a[0] * a[3] - a[1] * a[2];
      h[j] += std::sqrt(q);
      rho[j] += det / (q * std::sqrt(q));
    }
  }
  *this = CircleOperator(std::move(h), std::move(rho));
}

CircleOperator CircleOperator::from_samples(std::vector<double> h) {
  const std::size_t n = h.size();
  require_even_grid(n);
  const double dt = 2 * kPi / static_cast<double>(n);
  std::vector<double> rho(n);
  for (std::size_t j = 0; j < n; ++j) {
    double hp = h[(j + 1) % n], hm = h[(j + n - 1) % n];
    rho[j] = h[j] + (hp - 2 * h[j] + hm) / (dt * dt);
  }
  return CircleOperator(std::move(h), std::move(rho));
}

CircleOperator::CircleOperator(std::vector<double> h, std::vector<double> rho) : h_(std::move(h)), rho_(std::move(rho)) {
  const std::size_t n = h_.size();
  const double dt = 2 * kPi / static_cast<double>(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (!(h_[j] > 0)) throw std::domain_error("circle operator: h must be positive at every node");
    if (!(rho_[j] > 0)) throw std::domain_error("circle operator: h + h'' must be positive at every node");
  }
  d2_ = periodic_second_derivative(n);
  mass_.resize(static_cast<Eigen::Index>(n));
  Eigen::VectorXd inv_sqrt(n);
  for (std::size_t j = 0; j < n; ++j) {
    mass_(j) = dt * rho_[j] / (2 * h_[j]);
    inv_sqrt(j) = 1 / std::sqrt(mass_(j));
  }
  Eigen::MatrixXd b = (dt / 2) * (d2_ + Eigen::MatrixXd::Identity(n, n));
  c_ = inv_sqrt.asDiagonal() * b * inv_sqrt.asDiagonal();
  c_ = (c_ + c_.transpose()) / 2;
}

Eigen::VectorXd CircleOperator::apply(const Eigen::VectorXd& f) const {
  Eigen::VectorXd g = d2_ * f + f;
  for (Eigen::Index j = 0; j < g.size(); ++j) g(j) *= h_[j] / rho_[j];
  return g;
}

double CircleOperator::inner(const Eigen::VectorXd& f, const Eigen::VectorXd& g) const {
  return (mass_.array() * f.array() * g.array()).sum();
}

Eigen::MatrixXd CircleOperator::even_block() const {
  const Eigen::Index m = c_.rows() / 2;
  return c_.topLeftCorner(m, m) + c_.topRightCorner(m, m);
}

Eigen::MatrixXd CircleOperator::odd_block() const {
  const Eigen::Index m = c_.rows() / 2;
  return c_.topLeftCorner(m, m) - c_.topRightCorner(m, m);
}

std::vector<double> circle_block_spectrum(const CircleOperator& op, bool even) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(even ? op.even_block() : op.odd_block(),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver did not converge");
  std::vector<double> out(solver.eigenvalues().data(), solver.eigenvalues().data() + solver.eigenvalues().size());
  std::sort(out.rbegin(), out.rend());
  return out;
}

std::vector<Eigenpair> circle_spectrum(const CircleOperator& op) {
  std::vector<Eigenpair> out;
  for (double v : circle_block_spectrum(op, true)) out.push_back({v, true});
  for (double v : circle_block_spectrum(op, false)) out.push_back({v, false});
  std::stable_sort(out.begin(), out.end(), [](const Eigenpair& a, const Eigenpair& b) { return a.value > b.value; });
  return out;
}

Zonotope planar_generating_measure(const AtomicSphericalMeasure& s) {
  if (s.dim() != 2) throw std::invalid_argument("generating measure: planar measure expected");
  if (s.encoding() != MassEncoding::kScaled) throw std::invalid_argument("generating measure: surface area measure expected");
  if (!s.is_even()) throw std::invalid_argument("generating measure: body is not symmetric");
  std::vector<Generator> gens;
  for (const auto& a : s.atoms()) gens.push_back({{a.w[1], -a.w[0]}, a.c / Scalar(4)});
  return Zonotope(2, std::move(gens));
}

Zonotope planar_generating_measure(const SmoothBody& k, std::size_t n) {
  CircleOperator op(k, n);
  const double dt = 2 * kPi / static_cast<double>(n);
  std::vector<Generator> gens;
  for (std::size_t j = 0; j < n; ++j) {
    double th = dt * static_cast<double>(j);
    gens.push_back({{Scalar::from_double(std::sin(th)), Scalar::from_double(-std::cos(th))},
                    Scalar::from_double(op.curvature_radius()[j] * dt / 4)});
  }
  return Zonotope(2, std::move(gens));
}

SphereQuadrature::SphereQuadrature(int level, Rule rule) : level_(level), rule_(rule) {
  if (level < 0 || level > 9) throw std::invalid_argument("sphere quadrature level must lie in [0, 9]");
  const double p = (1 + std::sqrt(5.0)) / 2;
  std::vector<Vec3> v = {{-1, p, 0}, {1, p, 0}, {-1, -p, 0}, {1, -p, 0}, {0, -1, p}, {0, 1, p},
                         {0, -1, -p}, {0, 1, -p}, {p, 0, -1}, {p, 0, 1}, {-p, 0, -1}, {-p, 0, 1}};
  for (auto& x : v) x = normalized(x);
  const int faces[20][3] = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11}, {1, 5, 9}, {5, 11, 4},
                            {11, 10, 2}, {10, 7, 6}, {7, 1, 8},  {3, 9, 4},  {3, 4, 2},   {3, 2, 6}, {3, 6, 8},
                            {3, 8, 9},  {4, 9, 5},  {2, 4, 11}, {6, 2, 10}, {8, 6, 7},   {9, 8, 1}};
  std::vector<std::array<Vec3, 3>> tris;
  for (const auto& f : faces) tris.push_back({v[f[0]], v[f[1]], v[f[2]]});
  for (int l = 0; l < level; ++l) {
    std::vector<std::array<Vec3, 3>> next;
    next.reserve(tris.size() * 4);
    for (const auto& [a, b, c] : tris) {
      Vec3 ab = normalized({a[0] + b[0], a[1] + b[1], a[2] + b[2]});
      Vec3 bc = normalized({b[0] + c[0], b[1] + c[1], b[2] + c[2]});
      Vec3 ca = normalized({c[0] + a[0], c[1] + a[1], c[2] + a[2]});
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    tris = std::move(next);
  }
  if (rule == Rule::kCentroid) {
    nodes_.reserve(tris.size());
    weights_.reserve(tris.size());
    for (const auto& [a, b, c] : tris) {
      nodes_.push_back(normalized({a[0] + b[0] + c[0], a[1] + b[1] + c[1], a[2] + b[2] + c[2]}));
      weights_.push_back(spherical_area(a, b, c));
    }
    return;
  }

  // Dunavant degree 5: barycentric orbits (centroid, then two 3-point orbits)
  struct Orbit {
    double alpha, beta, weight;
  };
  const Orbit orbits[] = {{0.059715871789770, 0.470142064105115, 0.132394152788506},
                          {0.797426985353087, 0.101286507323456, 0.125939180544827}};
  nodes_.reserve(7 * tris.size());
  weights_.reserve(7 * tris.size());
  for (const auto& [a, b, c] : tris) {
    Vec3 ab{b[0] - a[0], b[1] - a[1], b[2] - a[2]};
    Vec3 ac{c[0] - a[0], c[1] - a[1], c[2] - a[2]};
    Vec3 nrm = cross3(ab, ac);
    const double twice_area = std::sqrt(dot3(nrm, nrm));
    const double dist = std::abs(dot3(a, nrm)) / twice_area;
    const std::size_t first = weights_.size();
    auto emit = [&](double la, double lb, double lc, double w) {
      Vec3 p{la * a[0] + lb * b[0] + lc * c[0], la * a[1] + lb * b[1] + lc * c[1], la * a[2] + lb * b[2] + lc * c[2]};
      double r = std::sqrt(dot3(p, p));
      nodes_.push_back({p[0] / r, p[1] / r, p[2] / r});
      weights_.push_back(w * twice_area / 2 * dist / (r * r * r));
    };
    emit(1.0 / 3, 1.0 / 3, 1.0 / 3, 0.225);
    for (const auto& o : orbits) {
      emit(o.alpha, o.beta, o.beta, o.weight);
      emit(o.beta, o.alpha, o.beta, o.weight);
      emit(o.beta, o.beta, o.alpha, o.weight);
    }
    // pin the triangle total to its exact area
    double sum = 0;
    for (std::size_t i = first; i < weights_.size(); ++i) sum += weights_[i];
    const double fix = spherical_area(a, b, c) / sum;
    for (std::size_t i = first; i < weights_.size(); ++i) weights_[i] *= fix;
  }
}

SecondOrderJet smooth_jet(const SupportExpr& f, const std::array<double, 3>& x) {
  std::size_t axis = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(x[i]) < std::abs(x[axis])) axis = i;
  Vec3 e{0, 0, 0};
  e[axis] = 1;
  Vec3 t1 = normalized({e[0] - x[axis] * x[0], e[1] - x[axis] * x[1], e[2] - x[axis] * x[2]});
  Vec3 t2 = cross3(x, t1);
  Eigen::Matrix<double, 3, 2> t;
  for (int i = 0; i < 3; ++i) {
    t(i, 0) = t1[i];
    t(i, 1) = t2[i];
  }
  Eigen::Vector3d xv(x[0], x[1], x[2]);

  SecondOrderJet jet{0.0, Eigen::Matrix2d::Zero()};
  for (const auto& term : f.terms()) {
    const auto* body = std::get_if<SmoothBody>(term.body.get());
    if (!body || body->dim() != 3) throw std::invalid_argument("smooth_jet: expected smooth bodies in R^3");
    const double coeff = term.coeff.to_double();
    for (const auto& a : body->matrices()) {
      Eigen::Matrix3d m;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = a[i][j].to_double();
      Eigen::Vector3d ax = m * xv;
      double q = xv.dot(ax);
      double s = std::sqrt(q);
      Eigen::Matrix3d hess = m / s - ax * ax.transpose() / (q * s);
      jet.value += coeff * s;
      jet.hessian += coeff * (t.transpose() * hess * t);
    }
  }
  return jet;
}

QuadraticForms quadratic_forms(const SupportExpr& k, const SupportExpr& f, const SphereQuadrature& q) {
  QuadraticForms out;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double w = q.weights()[i];
    SecondOrderJet jk = smooth_jet(k, q.nodes()[i]);
    SecondOrderJet jf = smooth_jet(f, q.nodes()[i]);
    const double h = jk.value;
    const double det_h = jk.hessian.determinant();
    if (!(det_h > 0) || !(jk.hessian(0, 0) > 0) || !(h > 0))
      throw std::domain_error("quadrature: K is not strictly convex at a node");
    const double dfh = mixed_det(jf.hessian, jk.hessian);
    out.aa += w * h / 3 * dfh * dfh / det_h;
    out.fa += w * jf.value * dfh / 3;
    out.fa_alt += w * h * jf.hessian.determinant() / 3;
    out.ff += w * jf.value * jf.value * det_h / (3 * h);
    out.kk += w * h * det_h / 3;
  }
  return out;
}

BochnerResidual bochner_residual(const SmoothBody& k, const SupportExpr& f, const SphereQuadrature& q) {
  if (k.dim() != 3) throw std::invalid_argument("bochner residual: K must lie in R^3");
  SupportExpr ke = SupportExpr::of(Body(k));
  BochnerResidual r;
  double side2 = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    SecondOrderJet jk = smooth_jet(ke, q.nodes()[i]);
    SecondOrderJet jf = smooth_jet(f, q.nodes()[i]);
    const double det_h = jk.hessian.determinant();
    if (!(det_h > 0) || !(jk.value > 0)) throw std::domain_error("bochner residual: K is not strictly convex at a node");
    const double dfh = mixed_det(jf.hessian, jk.hessian);
    const double integrand = dfh * dfh / det_h - jf.hessian.determinant();
    if (integrand < -1e-12 * (1 + std::abs(dfh * dfh / det_h))) r.integrand_nonnegative = false;
    side2 += q.weights()[i] * jk.value / 3 * integrand;
  }
  QuadraticForms forms = quadratic_forms(ke, f, q);
  r.side1 = forms.aa - forms.fa;
  r.side2 = side2;
  r.residual = std::abs(r.side1 - r.side2);
  return r;
}

InequalityReport check_superlich_quadrature(const SmoothBody& k, const SupportExpr& f, const SphereQuadrature& q,
                                            double tolerance) {
  if (k.dim() != 3) throw std::invalid_argument("superlich check: K must lie in R^3");
  QuadraticForms forms = quadratic_forms(SupportExpr::of(Body(k)), f, q);
  InequalityReport r;
  r.name = "superlich";
  r.n = 3;
  r.form = "quadrature level " + std::to_string(q.level());
  r.lhs = Scalar::from_double(forms.aa);
  r.rhs = Scalar::from_double(forms.fa / 2 + forms.ff / 2);
  r.deficit = Scalar::from_double(forms.aa - forms.fa / 2 - forms.ff / 2);
  r.error_bound = tolerance;
  r.verdict = verdict_of(r.deficit, tolerance);
  r.details["af_af"] = Scalar::from_double(forms.aa).str();
  r.details["f_af"] = Scalar::from_double(forms.fa).str();
  r.details["f_af_by_parts"] = Scalar::from_double(forms.fa_alt).str();
  r.details["f_f"] = Scalar::from_double(forms.ff).str();
  r.details["vol_k"] = Scalar::from_double(forms.kk).str();
  return r;
}

SupportExpr orthogonalized_difference(const SmoothBody& k, const SmoothBody& l, const SphereQuadrature& q) {
  SupportExpr ke = SupportExpr::of(Body(k));
  SupportExpr le = SupportExpr::of(Body(l));
  double lk = 0, kk = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    SecondOrderJet jk = smooth_jet(ke, q.nodes()[i]);
    SecondOrderJet jl = smooth_jet(le, q.nodes()[i]);
    const double det_h = jk.hessian.determinant();
    lk += q.weights()[i] * jl.value * det_h;
    kk += q.weights()[i] * jk.value * det_h;
  }
  SupportExpr f = le;
  f.add(Body(k), Scalar::from_double(-lk / kk));
  return f;
}

}  // namespace logbm
