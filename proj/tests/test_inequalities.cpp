#include <cmath>
#include <random>

#include "doctest.h"
#include "logbm/inequalities.hpp"
#include "support.hpp"

using namespace logbm;
using testing_support::rnd_zonotope;

namespace {

Zonotope box(long a, long b, long c) {
  std::vector<Scalar> w{Scalar(a), Scalar(b), Scalar(c)};
  return Zonotope::box(w);
}

const Body cross3 = SymmetricPolytope::cross_polytope(3);

}  // namespace

TEST_CASE("brunn-minkowski") {
  const Zonotope k = Zonotope::cube(3);
  auto same = check_bm(Body(k), Body(k), Scalar(mpq_class(1, 3)));
  CHECK(same.verdict == Verdict::kEquality);
  CHECK(same.details["geometric_form_holds"] == "true");

  auto homo = check_bm(Body(k), Body(k.scaled(Scalar(2))), Scalar(mpq_class(1, 2)));
  CHECK(homo.lhs == Scalar(27));
  CHECK(homo.rhs == Scalar(27));
  CHECK(homo.verdict == Verdict::kEquality);

  auto irr = check_bm(Body(k), Body(box(1, 1, 2)), Scalar(mpq_class(1, 2)));
  CHECK(irr.form == "power (bracketed roots)");
  CHECK(irr.verdict == Verdict::kHolds);

  auto poly = check_bm(Body(k), cross3, Scalar(mpq_class(1, 2)));
  CHECK(poly.verdict == Verdict::kHolds);

  std::mt19937_64 rng(50);
  for (int trial = 0; trial < 20; ++trial) {
    auto l = rnd_zonotope(rng, 3, 4, 3);
    auto r = check_bm(Body(k), Body(l), Scalar(mpq_class(1, 3)));
    REQUIRE(r.verdict == Verdict::kHolds);
    // lhs by an independent route: hull of sums of vertices
    std::vector<Vec> pts;
    for (const auto& p : body_vertices(k))
      for (const auto& q : body_vertices(l)) pts.push_back(Scalar(mpq_class(2, 3)) * p + Scalar(mpq_class(1, 3)) * q);
    REQUIRE(r.lhs == hull_volume(pts));
  }
}

TEST_CASE("minkowski first and second") {
  const Zonotope k = Zonotope::cube(3);
  CHECK(check_minkowski_first(k, Body(k)).verdict == Verdict::kEquality);
  auto m1 = check_minkowski_first(k, cross3);
  CHECK(m1.lhs == Scalar(512));
  CHECK(m1.rhs == Scalar(mpq_class(256, 3)));
  CHECK(m1.verdict == Verdict::kHolds);

  CHECK(check_minkowski_second(k, Body(k)).verdict == Verdict::kEquality);
  auto m2 = check_minkowski_second(k, cross3);
  CHECK(m2.lhs == Scalar(64));
  CHECK(m2.rhs == Scalar(32));
  CHECK(m2.verdict == Verdict::kHolds);
  auto seg = check_minkowski_second(k, Body(Zonotope::segment(Vec{1, 2, 0})));
  CHECK(seg.verdict != Verdict::kViolated);

  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    auto kk = rnd_zonotope(rng, 3, 4, 3);
    auto l = rnd_zonotope(rng, 3, 3, 3);
    REQUIRE(check_minkowski_first(kk, Body(l)).verdict != Verdict::kViolated);
    REQUIRE(check_minkowski_second(kk, Body(l)).verdict != Verdict::kViolated);
  }
}

TEST_CASE("local log-brunn-minkowski examples") {
  const Zonotope k = Zonotope::cube(3);
  auto self = check_local_logbm(k, SupportExpr::of(Body(k)));
  CHECK(self.verdict == Verdict::kEquality);
  CHECK(self.lhs == Scalar(8));

  auto b = check_local_logbm(k, SupportExpr::of(Body(box(1, 2, 3))));
  CHECK(b.lhs == Scalar(32));
  CHECK(b.rhs == Scalar(32));
  CHECK(b.verdict == Verdict::kEquality);

  auto c = check_local_logbm(k, SupportExpr::of(cross3));
  CHECK(c.lhs == Scalar(8));
  CHECK(c.rhs == Scalar(mpq_class(16, 3)));
  CHECK(c.deficit == Scalar(mpq_class(8, 3)));
  CHECK(c.details["int_f2_over_hk"] == "24");
  CHECK(c.details["v_f_f_k"] == "4");
}

TEST_CASE("local log-bm constituents against the polynomial oracle") {
  const Zonotope k = Zonotope::cube(3);
  auto coeffs = testing_support::volume_polynomial_mixed_volumes(body_vertices(k), SymmetricPolytope::cross_polytope(3).points());
  CHECK(coeffs[0] == Scalar(8));
  CHECK(coeffs[1] == Scalar(8));
  CHECK(coeffs[2] == Scalar(4));
  CHECK(coeffs[3] == Scalar(mpq_class(4, 3)));
}

TEST_CASE("local log-bm deficit invariances") {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 15; ++trial) {
    auto k = rnd_zonotope(rng, 3, 4, 3);
    Body l = trial % 2 ? Body(testing_support::rnd_polytope(rng, 3, 4, 3)) : Body(rnd_zonotope(rng, 3, 3, 3));
    SupportExpr f = SupportExpr::of(l);
    auto base = check_local_logbm(k, f);
    REQUIRE(base.verdict != Verdict::kViolated);

    SupportExpr shifted = f;
    shifted.add(Body(k), Scalar(mpq_class(3, 2)));
    REQUIRE(check_local_logbm(k, shifted).deficit == base.deficit);

    const Scalar s(mpq_class(5, 3));
    SupportExpr fs = SupportExpr::of(l, s);
    REQUIRE(check_local_logbm(k.scaled(s), fs).deficit == pow(s, 3) * base.deficit);
  }
}

TEST_CASE("local log-bm with signed differences") {
  const Zonotope k = Zonotope::cube(3);
  SupportExpr f = SupportExpr::of(Body(box(1, 2, 3)));
  f.add(cross3, Scalar(-1));
  CHECK(check_local_logbm(k, f).verdict == Verdict::kHolds);
  SupportExpr g = SupportExpr::of(cross3);
  g.add(Body(SymmetricPolytope(3, {{1, 1, 0}, {0, 1, 1}, {1, 0, 1}})), Scalar(-2));
  CHECK(check_local_logbm(k, g).verdict != Verdict::kViolated);
}

TEST_CASE("induction step") {
  const Zonotope k = Zonotope::cube(3);
  const Vec e1 = unit_vector(3, 0);
  auto self = check_induction_step(k, SupportExpr::of(Body(k)), e1);
  CHECK(self.verdict == Verdict::kEquality);
  CHECK(check_induction_step(k, SupportExpr::of(cross3), e1).verdict == Verdict::kHolds);
  CHECK(check_induction_step(k, SupportExpr::of(Body(box(1, 2, 3))), e1).verdict == Verdict::kEquality);
  CHECK_THROWS_AS(check_induction_step(Zonotope::cube(2), SupportExpr::of(Body(Zonotope::cube(2))), unit_vector(2, 0)),
                  PreconditionError);

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 10; ++trial) {
    std::size_t n = 3 + trial % 2;
    auto kk = rnd_zonotope(rng, n, n + 1, 3);
    auto l = rnd_zonotope(rng, n, 3, 3, false);
    Vec u = testing_support::rnd_nonzero_vec(rng, n, 3);
    REQUIRE(check_induction_step(kk, SupportExpr::of(Body(l)), u).verdict != Verdict::kViolated);
  }
}

TEST_CASE("log-minkowski") {
  const Zonotope k = Zonotope::cube(3);
  CHECK(check_log_minkowski(k, Body(k)).verdict == Verdict::kEquality);
  auto homo = check_log_minkowski(k, Body(k.scaled(Scalar(2))));
  CHECK(homo.verdict == Verdict::kEquality);
  CHECK(std::abs(homo.deficit.to_double()) <= 1e-12);
  auto c = check_log_minkowski(k, cross3);
  CHECK(c.lhs == Scalar(0));
  CHECK(c.rhs.to_double() == doctest::Approx(8 * std::log(1.0 / 6)));
  CHECK(c.verdict == Verdict::kHolds);
  CHECK_THROWS_AS(check_log_minkowski(k, Body(Zonotope::segment(Vec{1, 0, 0}))), PreconditionError);
}

namespace {

// D(A_1..A_m) = (1/m!) sum over permutations of det(column j from A_sigma(j)).
Scalar column_mixing_oracle(const std::vector<Matrix>& mats) {
  const std::size_t m = mats.size();
  std::vector<std::size_t> perm(m);
  for (std::size_t i = 0; i < m; ++i) perm[i] = i;
  Scalar total(0);
  long count = 0;
  do {
    Matrix x(m, Vec(m));
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c) x[r][c] = mats[perm[c]][r][c];
    total += testing_support::cofactor_det(x);
    ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total / Scalar(count);
}

Matrix rnd_symmetric(std::mt19937_64& rng, std::size_t m) {
  Matrix a(m, Vec(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j <= i; ++j) a[i][j] = a[j][i] = testing_support::rnd_rational(rng, 6, 3);
  return a;
}

Matrix rnd_psd(std::mt19937_64& rng, std::size_t m) {
  Matrix g(m, Vec(m));
  for (auto& row : g)
    for (auto& x : row) x = testing_support::rnd_rational(rng, 4, 3);
  Matrix out(m, Vec(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) out[i][j] = dot(g[i], g[j]);
  return out;
}

}  // namespace

TEST_CASE("mixed discriminant") {
  std::vector<Matrix> ii{{{1, 0}, {0, 1}}, {{1, 0}, {0, 1}}};
  CHECK(mixed_discriminant(ii) == Scalar(1));
  std::vector<Matrix> single{{{Scalar(mpq_class(7, 2))}}};
  CHECK(mixed_discriminant(single) == Scalar(mpq_class(7, 2)));
  std::vector<Matrix> bad{{{1, 2}, {3, 1}}, {{1, 0}, {0, 1}}};
  CHECK_THROWS_AS(mixed_discriminant(bad), PreconditionError);

  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Matrix> t{rnd_symmetric(rng, 3), rnd_symmetric(rng, 3), rnd_symmetric(rng, 3)};
    Scalar d = mixed_discriminant(t);
    REQUIRE(d == column_mixing_oracle(t));
    std::vector<Matrix> sw{t[2], t[0], t[1]};
    REQUIRE(mixed_discriminant(sw) == d);
    std::vector<Matrix> same{t[0], t[0], t[0]};
    REQUIRE(mixed_discriminant(same) == det(t[0]));
    Matrix sum = t[0];
    Matrix extra = rnd_symmetric(rng, 3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) sum[i][j] += Scalar(3) * extra[i][j];
    std::vector<Matrix> lin{sum, t[1], t[2]}, ex{extra, t[1], t[2]};
    REQUIRE(mixed_discriminant(lin) == d + Scalar(3) * mixed_discriminant(ex));
  }
}

TEST_CASE("alexandrov mixed discriminant inequality") {
  Matrix id{{1, 0}, {0, 1}};
  CHECK(check_alexandrov_mixed_discriminant(id, id, {}).verdict == Verdict::kEquality);
  Matrix a{{1, 0}, {0, -1}};
  auto r = check_alexandrov_mixed_discriminant(a, id, {});
  CHECK(r.lhs == Scalar(0));
  CHECK(r.rhs == Scalar(-1));
  CHECK(r.verdict == Verdict::kHolds);
  CHECK_THROWS_AS(check_alexandrov_mixed_discriminant(id, a, {}), PreconditionError);

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Matrix> ms{rnd_psd(rng, 4), rnd_psd(rng, 4)};
    auto res = check_alexandrov_mixed_discriminant(rnd_symmetric(rng, 4), rnd_psd(rng, 4), ms);
    REQUIRE(res.verdict != Verdict::kViolated);
  }
}

TEST_CASE("witness minimizer shrinks while the predicate holds") {
  std::mt19937_64 rng(56);
  CheckInstance inst{"mink2", rnd_zonotope(rng, 3, 6, 40), Body(rnd_zonotope(rng, 3, 5, 40)), Scalar(0), Vec{}};
  // synthetic failure: K keeps at least four generators
  auto fails = [](const CheckInstance& c) { return c.k.generators().size() >= 4; };
  CheckInstance w = minimize_witness(inst, fails, rng);
  CHECK(fails(w));
  CHECK(w.k.generators().size() == 4);
  CHECK(std::get<Zonotope>(w.l).generators().size() == 1);
  for (const auto& g : w.k.generators()) {
    CHECK(g.weight == Scalar(1));
    for (const auto& x : g.direction) CHECK(abs(x) <= Scalar(2));
  }
}
