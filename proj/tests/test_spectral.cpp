#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "doctest.h"
#include "logbm/mixedvol.hpp"
#include "logbm/spectral.hpp"

using namespace logbm;

namespace {

constexpr double kPi = std::numbers::pi;

Matrix float_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  Matrix m;
  for (const auto& r : rows) {
    Vec v;
    for (double x : r) v.push_back(Scalar::from_double(x));
    m.push_back(std::move(v));
  }
  return m;
}

SmoothBody ellipse(double a, double b) { return SmoothBody(2, {float_matrix({{a * a, 0}, {0, b * b}})}); }

// sum of 1-3 random ellipses, well conditioned
SmoothBody random_planar(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  std::uniform_int_distribution<int> count(1, 3);
  std::vector<Matrix> ms;
  for (int i = count(rng); i > 0; --i) {
    double p = u(rng), q = u(rng), r = u(rng);
    ms.push_back(float_matrix({{p * p + r * r + 0.2, p * q}, {p * q, q * q + 0.2}}));
  }
  return SmoothBody(2, ms);
}

SmoothBody random_ellipsoid(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1, 1);
  Eigen::Matrix3d g;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g(i, j) = u(rng);
  Eigen::Matrix3d a = g * g.transpose() + 0.3 * Eigen::Matrix3d::Identity();
  a = a.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose();
  return SmoothBody(3, {float_matrix({{a(0, 0), a(0, 1), a(0, 2)}, {a(1, 0), a(1, 1), a(1, 2)}, {a(2, 0), a(2, 1), a(2, 2)}})});
}

SmoothBody ball3() { return SmoothBody(3, {float_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})}); }

Eigen::VectorXd sample(std::size_t n, const std::function<double(double)>& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t j = 0; j < n; ++j) v(j) = f(2 * kPi * static_cast<double>(j) / static_cast<double>(n));
  return v;
}

}  // namespace

TEST_CASE("spectral second derivative on Fourier modes") {
  const std::size_t n = 64;
  Eigen::MatrixXd d = periodic_second_derivative(n);
  for (int k = 0; k < 32; ++k) {
    Eigen::VectorXd c = sample(n, [k](double t) { return std::cos(k * t); });
    Eigen::VectorXd s = sample(n, [k](double t) { return std::sin(k * t); });
    CHECK((d * c + k * k * c).norm() < 1e-9 * (1 + k * k));
    CHECK((d * s + k * k * s).norm() < 1e-9 * (1 + k * k));
  }
  CHECK_THROWS(periodic_second_derivative(7));
}

TEST_CASE("unit circle spectrum is 1 - k^2") {
  auto op = CircleOperator::from_samples(std::vector<double>(256, 1.0));
  auto spec = circle_spectrum(op);
  // 1, then 0 0, then -3 -3, -8 -8, ...
  CHECK(spec[0].value == doctest::Approx(1).epsilon(1e-9));
  CHECK(spec[0].even);
  for (int k = 1; k < 20; ++k) {
    for (int j = 0; j < 2; ++j) {
      const auto& e = spec[static_cast<std::size_t>(2 * k - 1 + j)];
      CHECK(std::abs(e.value - (1.0 - k * k)) < 1e-6 * k * k);
      CHECK(e.even == (k % 2 == 0));
    }
  }
}

TEST_CASE("circle operator is self-adjoint and fixes h") {
  std::mt19937_64 rng(5);
  const SmoothBody k = random_planar(rng);
  CircleOperator op(k, 128);
  Eigen::VectorXd h = Eigen::Map<const Eigen::VectorXd>(op.h().data(), static_cast<Eigen::Index>(op.size()));
  CHECK((op.apply(h) - h).norm() < 1e-8 * h.norm());

  std::normal_distribution<double> g;
  Eigen::VectorXd f(128), q(128);
  for (int i = 0; i < 128; ++i) {
    f(i) = g(rng);
    q(i) = g(rng);
  }
  const double a = op.inner(f, op.apply(q)), b = op.inner(op.apply(f), q);
  CHECK(std::abs(a - b) < 1e-10 * (std::abs(a) + std::abs(b)));

  // shift by pi commutes with C: the parity blocks decouple
  const Eigen::MatrixXd& c = op.symmetrized();
  const Eigen::Index m = 64;
  CHECK((c.topLeftCorner(m, m) - c.bottomRightCorner(m, m)).norm() < 1e-10 * c.norm());
  CHECK((c.topRightCorner(m, m) - c.bottomLeftCorner(m, m)).norm() < 1e-10 * c.norm());
  CHECK(op.mass().minCoeff() > 0);
}

TEST_CASE("ellipse spectrum") {
  CircleOperator op(ellipse(1, 2), 512);
  auto even = circle_block_spectrum(op, true);
  auto odd = circle_block_spectrum(op, false);
  CHECK(std::abs(even[0] - 1) < 1e-6);
  CHECK(even[1] <= -1 - 1e-3);
  CHECK(std::abs(odd[0]) < 1e-6);
  CHECK(std::abs(odd[1]) < 1e-6);
  CHECK(odd[2] < -1);
  CHECK_THROWS_AS(CircleOperator(ball3(), 64), std::invalid_argument);
}

TEST_CASE("even spectrum below -1 for random smooth planar bodies") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    CircleOperator op(random_planar(rng), 256);
    auto even = circle_block_spectrum(op, true);
    CHECK(std::abs(even[0] - 1) < 1e-6);
    CHECK(even[1] <= -1 + 1e-3);
  }
}

TEST_CASE("planar quadratic spectral inequality for even f") {
  std::mt19937_64 rng(23);
  std::normal_distribution<double> g;
  CircleOperator op(random_planar(rng), 256);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> a(5), b(5);
    for (int k = 0; k < 5; ++k) {
      a[k] = g(rng);
      b[k] = g(rng);
    }
    Eigen::VectorXd f = sample(256, [&](double t) {
      double s = 0;
      for (int k = 0; k < 5; ++k) s += a[k] * std::cos(2 * k * t) + b[k] * std::sin(2 * k * t);
      return s;
    });
    Eigen::VectorXd af = op.apply(f);
    CHECK(op.inner(af, af) >= op.inner(f, f) * (1 - 1e-9));
  }
}

TEST_CASE("pointwise samples approximate the analytic operator") {
  const SmoothBody e = ellipse(1, 2);
  CircleOperator exact(e, 512);
  auto approx = CircleOperator::from_samples(exact.h());
  for (std::size_t j = 0; j < 512; j += 37)
    CHECK(approx.curvature_radius()[j] == doctest::Approx(exact.curvature_radius()[j]).epsilon(1e-3));
  CHECK(circle_block_spectrum(approx, true)[1] <= -1 + 1e-3);
  CHECK_THROWS_AS(CircleOperator::from_samples({1, 1, 5, 1, 1, 1}), std::domain_error);
}

TEST_CASE("generating measures of polygons") {
  const Zonotope sq = Zonotope::cube(2);
  std::vector<Slot> one{sq};
  Zonotope eta = planar_generating_measure(mixed_area_measure(one));
  CHECK(eta.same_body(sq));

  const SymmetricPolytope hex(2, {{1, 0}, {0, 1}, {1, 1}});
  std::vector<Slot> hs{hex};
  Zonotope z = planar_generating_measure(mixed_area_measure(hs));
  CHECK(z.generators().size() == 3);
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> c(-20, 20);
  for (int i = 0; i < 100; ++i) {
    Vec x{c(rng), c(rng)};
    CHECK(support_eval(z, x) == support_eval(hex, x));
    CHECK(support_eval(eta, x) == abs(x[0]) + abs(x[1]));
  }

  AtomicSphericalMeasure lopsided(2);
  lopsided.add({1, 0}, 1);
  CHECK_THROWS(planar_generating_measure(lopsided));
}

TEST_CASE("generating measure of the disk") {
  Zonotope eta = planar_generating_measure(ellipse(1, 1), 256);
  double total = 0;
  for (const auto& g : eta.generators()) total += g.weight.to_double();
  // uniform, total mass 2 pi / 4
  CHECK(total == doctest::Approx(2 * kPi / 4).epsilon(1e-9));
  for (int i = 0; i < 100; ++i) {
    double t = 2 * kPi * i / 100.0 + 0.01;
    Vec x{Scalar::from_double(std::cos(t)), Scalar::from_double(std::sin(t))};
    CHECK(std::abs(support_eval(eta, x).to_double() - 1) < 1e-3);
  }
}

TEST_CASE("sphere quadrature") {
  for (auto rule : {SphereQuadrature::Rule::kCentroid, SphereQuadrature::Rule::kSevenPoint}) {
    SphereQuadrature q(3, rule);
    double total = 0, second = 0;
    for (std::size_t i = 0; i < q.size(); ++i) {
      const auto& x = q.nodes()[i];
      CHECK(std::abs(std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]) - 1) < 1e-14);
      total += q.weights()[i];
      second += q.weights()[i] * x[2] * x[2];
    }
    CHECK(std::abs(total - 4 * kPi) < 1e-10);
    CHECK(second == doctest::Approx(4 * kPi / 3).epsilon(1e-3));
  }
  CHECK(SphereQuadrature(2).size() == 320);
  CHECK(SphereQuadrature(1, SphereQuadrature::Rule::kSevenPoint).size() == 560);
}

TEST_CASE("restricted Hessians match finite differences") {
  std::mt19937_64 rng(9);
  const SmoothBody e = random_ellipsoid(rng);
  SupportExpr f = SupportExpr::of(Body(e));
  f.add(Body(ball3()), Scalar::from_double(-0.5));
  auto h = [&](const Eigen::Vector3d& p) {
    return support_eval(f, Vec{Scalar::from_double(p[0]), Scalar::from_double(p[1]), Scalar::from_double(p[2])})
        .to_double();
  };
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 10; ++trial) {
    Eigen::Vector3d x(g(rng), g(rng), g(rng));
    x.normalize();
    SecondOrderJet jet = smooth_jet(f, {x[0], x[1], x[2]});
    CHECK(jet.value == doctest::Approx(h(x)).epsilon(1e-12));
    // the jet's basis is unknown, so compare invariants of the tangent Hessian
    Eigen::Vector3d t1 = x.unitOrthogonal(), t2 = x.cross(t1);
    const double s = 1e-4;
    auto d2 = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) {
      return (h(x + s * a + s * b) - h(x + s * a - s * b) - h(x - s * a + s * b) + h(x - s * a - s * b)) / (4 * s * s);
    };
    Eigen::Matrix2d fd;
    fd << d2(t1, t1), d2(t1, t2), d2(t2, t1), d2(t2, t2);
    CHECK(jet.hessian.trace() == doctest::Approx(fd.trace()).epsilon(1e-5));
    CHECK(jet.hessian.determinant() == doctest::Approx(fd.determinant()).epsilon(1e-4));
  }
}

TEST_CASE("quadratic forms of h_K") {
  SphereQuadrature q(4, SphereQuadrature::Rule::kSevenPoint);
  const SmoothBody e(3, {float_matrix({{1, 0, 0}, {0, 4, 0}, {0, 0, 9}})});
  SupportExpr h = SupportExpr::of(Body(e));
  QuadraticForms qf = quadratic_forms(h, h, q);
  CHECK(qf.kk == doctest::Approx(4 * kPi / 3 * 6).epsilon(1e-7));
  CHECK(qf.aa == doctest::Approx(qf.kk).epsilon(1e-12));
  CHECK(qf.fa == doctest::Approx(qf.kk).epsilon(1e-12));
  CHECK(qf.fa_alt == doctest::Approx(qf.kk).epsilon(1e-12));
  CHECK(qf.ff == doctest::Approx(qf.kk).epsilon(1e-12));
}

TEST_CASE("orthogonalized difference") {
  std::mt19937_64 rng(31);
  SphereQuadrature q(3, SphereQuadrature::Rule::kSevenPoint);
  const SmoothBody k = random_ellipsoid(rng);
  SupportExpr f = orthogonalized_difference(k, random_ellipsoid(rng), q);
  SupportExpr hk = SupportExpr::of(Body(k));
  double cross = 0, norm = 0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    auto jk = smooth_jet(hk, q.nodes()[i]);
    auto jf = smooth_jet(f, q.nodes()[i]);
    cross += q.weights()[i] * jf.value * jk.hessian.determinant();
    norm += q.weights()[i] * std::abs(jf.value) * jk.hessian.determinant();
  }
  CHECK(std::abs(cross) < 1e-12 * norm);
}

TEST_CASE("Bochner identity") {
  SphereQuadrature q6(6, SphereQuadrature::Rule::kSevenPoint);
  std::mt19937_64 rng(41);
  const SmoothBody b = ball3();
  SupportExpr f = orthogonalized_difference(b, random_ellipsoid(rng), q6);
  BochnerResidual r = bochner_residual(b, f, q6);
  CHECK(r.residual < 1e-6);
  CHECK(r.side1 > 0);
  CHECK(r.integrand_nonnegative);

  BochnerResidual trivial = bochner_residual(b, SupportExpr::of(Body(b)), SphereQuadrature(2));
  CHECK(std::abs(trivial.side1) < 1e-12);
  CHECK(std::abs(trivial.side2) < 1e-12);

  // second order for the one-point rule
  const SmoothBody k(3, {float_matrix({{2, 1, 0}, {1, 3, 1}, {0, 1, 1}}), float_matrix({{1, 0, 0}, {0, 1, 0}, {0, 0, 5}})});
  SupportExpr g = orthogonalized_difference(k, random_ellipsoid(rng), q6);
  double r3 = bochner_residual(k, g, SphereQuadrature(3)).residual;
  double r4 = bochner_residual(k, g, SphereQuadrature(4)).residual;
  double r5 = bochner_residual(k, g, SphereQuadrature(5)).residual;
  CHECK(r3 / r4 == doctest::Approx(4).epsilon(0.25));
  CHECK(r4 / r5 == doctest::Approx(4).epsilon(0.25));
}

TEST_CASE("quadratic spectral inequality by quadrature") {
  SphereQuadrature q(4, SphereQuadrature::Rule::kSevenPoint);
  std::mt19937_64 rng(43);
  const SmoothBody b = ball3();
  auto eq = check_superlich_quadrature(b, SupportExpr::of(Body(b)), q, 1e-9);
  CHECK(eq.verdict == Verdict::kEquality);
  for (int trial = 0; trial < 3; ++trial) {
    SupportExpr f = orthogonalized_difference(b, random_ellipsoid(rng), q);
    auto r = check_superlich_quadrature(b, f, q, 1e-6);
    CHECK(r.verdict == Verdict::kHolds);
    CHECK(r.deficit.to_double() > 1e-6);
  }
  const SmoothBody k(3, {float_matrix({{2, 1, 0}, {1, 3, 1}, {0, 1, 1}}), random_ellipsoid(rng).matrices()[0]});
  auto r = check_superlich_quadrature(k, orthogonalized_difference(k, random_ellipsoid(rng), q), q, 1e-6);
  CHECK(r.verdict == Verdict::kHolds);
}
