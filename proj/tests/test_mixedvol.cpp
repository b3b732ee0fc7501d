#include <random>

#include "doctest.h"
#include "logbm/mixedvol.hpp"
#include "support.hpp"

using namespace logbm;
using testing_support::rnd_zonotope;

namespace {

Scalar vol_via_measure(const Zonotope& z) {
  std::vector<Slot> slots(z.dim() - 1, z);
  auto s = mixed_area_measure(slots);
  return s.integrate([&](const Vec& w) { return support_eval(z, w); }) / Scalar(static_cast<long>(z.dim()));
}

}  // namespace

TEST_CASE("mixed volume examples") {
  std::vector<Slot> segs{Zonotope::segment(unit_vector(3, 0)), Zonotope::segment(unit_vector(3, 1)),
                         Zonotope::segment(unit_vector(3, 2))};
  CHECK(mixed_volume(segs) == Scalar(mpq_class(4, 3)));
  CHECK(zonotope_volume(Zonotope::cube(3)) == Scalar(8));
  std::vector<Slot> lkk{SymmetricPolytope::cross_polytope(3), Zonotope::cube(3), Zonotope::cube(3)};
  CHECK(mixed_volume(lkk) == Scalar(8));
  std::vector<Slot> llk{SymmetricPolytope::cross_polytope(3), SymmetricPolytope::cross_polytope(3), Zonotope::cube(3)};
  CHECK(mixed_volume(llk) == Scalar(4));
  std::vector<Slot> lll(3, SymmetricPolytope::cross_polytope(3));
  CHECK_THROWS_AS(mixed_volume(lll), UnsupportedCombination);
}

TEST_CASE("mixed area measure examples") {
  std::vector<Slot> kk(2, Zonotope::cube(3));
  auto s = mixed_area_measure(kk);
  REQUIRE(s.size() == 6);
  CHECK(s.is_even());
  for (const auto& a : s.atoms()) {
    CHECK(norm2(a.w) == Scalar(1));
    CHECK(a.c == Scalar(4));
  }

  std::vector<Slot> two{Zonotope::segment(unit_vector(3, 0)), Zonotope::segment(unit_vector(3, 1))};
  auto s2 = mixed_area_measure(two);
  REQUIRE(s2.size() == 2);
  for (const auto& a : s2.atoms()) {
    CHECK(abs(a.w[2]) == Scalar(1));
    CHECK(a.c == Scalar(2));
  }

  std::vector<Slot> lk{SymmetricPolytope::cross_polytope(3), Zonotope::cube(3)};
  auto s3 = mixed_area_measure(lk);
  REQUIRE(s3.size() == 12);
  for (const auto& a : s3.atoms()) {
    CHECK(a.c == Scalar(1));
    CHECK(norm2(a.w) == Scalar(2));
  }
  Body l = SymmetricPolytope::cross_polytope(3);
  CHECK(s3.integrate([&](const Vec& w) { return support_eval(l, w); }) == Scalar(12));

  std::vector<Slot> dep{Zonotope::segment(unit_vector(3, 0)), Zonotope::segment(Vec{2, 0, 0})};
  CHECK(mixed_area_measure(dep).empty());
}

TEST_CASE("cone volume measure") {
  auto v = cone_volume_measure(Zonotope::cube(3));
  REQUIRE(v.size() == 6);
  for (const auto& a : v.atoms()) CHECK(a.c == Scalar(mpq_class(4, 3)));
  CHECK(v.total_mass() == Scalar(8));
  CHECK_THROWS(cone_volume_measure(Zonotope::segment(Vec{1, 0, 0})));
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 30; ++trial) {
    auto z = rnd_zonotope(rng, 3 + trial % 2, 5, 3);
    REQUIRE(cone_volume_measure(z).total_mass() == zonotope_volume(z));
  }
}

TEST_CASE("volume consistency and polynomial oracle") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto k = rnd_zonotope(rng, 3, 4, 3);
    auto l = rnd_zonotope(rng, 3, 3, 3);
    REQUIRE(vol_via_measure(k) == zonotope_volume(k));
    REQUIRE(zonotope_volume(k) == hull_volume(body_vertices(k)));
    auto c = testing_support::volume_polynomial_mixed_volumes(body_vertices(k), body_vertices(l));
    for (std::size_t j = 0; j <= 3; ++j) {
      std::vector<Slot> slots;
      for (std::size_t i = 0; i < j; ++i) slots.emplace_back(l);
      for (std::size_t i = j; i < 3; ++i) slots.emplace_back(k);
      REQUIRE(mixed_volume(slots) == c[j]);
    }
  }
}

TEST_CASE("polytope slot against the polynomial oracle") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 10; ++trial) {
    auto k = rnd_zonotope(rng, 3, 4, 3);
    auto p = testing_support::rnd_polytope(rng, 3, 4, 3);
    auto c = testing_support::volume_polynomial_mixed_volumes(body_vertices(k), p.points());
    std::vector<Slot> pkk{p, k, k};
    std::vector<Slot> ppk{p, p, k};
    std::vector<Slot> kpk{k, p, k};
    REQUIRE(mixed_volume(pkk) == c[1]);
    REQUIRE(mixed_volume(kpk) == c[1]);
    REQUIRE(mixed_volume(ppk) == c[2]);
  }
}

TEST_CASE("symmetry, multilinearity, nonnegativity") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 30; ++trial) {
    auto a = rnd_zonotope(rng, 3, 3, 3, false);
    auto b = rnd_zonotope(rng, 3, 3, 3, false);
    auto c = rnd_zonotope(rng, 3, 2, 3, false);
    auto d = rnd_zonotope(rng, 3, 2, 3, false);
    std::vector<Slot> abc{a, b, c}, cab{c, a, b}, bca{b, c, a};
    Scalar v = mixed_volume(abc);
    REQUIRE(v.sign() >= 0);
    REQUIRE(mixed_volume(cab) == v);
    REQUIRE(mixed_volume(bca) == v);
    std::vector<Slot> sum{a, b, c + d}, abd{a, b, d};
    REQUIRE(mixed_volume(sum) == v + mixed_volume(abd));
    std::vector<Slot> sc{a.scaled(Scalar(mpq_class(5, 2))), b, c};
    REQUIRE(mixed_volume(sc) == Scalar(mpq_class(5, 2)) * v);
  }
}

TEST_CASE("integral representation") {
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 2 + trial % 3;
    auto m = rnd_zonotope(rng, n, 3, 3, false);
    auto p = testing_support::rnd_polytope(rng, n, n + 1, 3);
    std::vector<Slot> slots;
    for (std::size_t i = 0; i + 1 < n; ++i) slots.emplace_back(rnd_zonotope(rng, n, 3, 3, false));
    if (trial % 2) slots[0] = p;
    auto s = mixed_area_measure(slots);
    std::vector<Slot> full{m};
    full.insert(full.end(), slots.begin(), slots.end());
    REQUIRE(s.integrate([&](const Vec& w) { return support_eval(m, w); }) / Scalar(static_cast<long>(n)) ==
            mixed_volume(full));
  }
}

TEST_CASE("projection identity") {
  std::vector<Slot> kk(2, Zonotope::cube(3));
  auto r = projection_identity_check(unit_vector(3, 2), kk);
  CHECK(r.equal);
  CHECK(r.lhs == Scalar(4));
  CHECK(r.rhs == Scalar(4));

  std::vector<Slot> par(2, Zonotope::segment(Vec{1, 1, 0}));
  auto z = projection_identity_check(Vec{1, 1, 0}, par);
  CHECK(z.equal);
  CHECK(z.lhs.is_zero());

  CHECK_THROWS(projection_identity_check(Vec{0, 0, 0}, kk));

  std::mt19937_64 rng(45);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 3 + trial % 2;
    Vec u = testing_support::rnd_nonzero_vec(rng, n, 4);
    std::vector<Slot> slots;
    for (std::size_t i = 0; i + 1 < n; ++i) slots.emplace_back(rnd_zonotope(rng, n, 3, 3, false));
    auto res = projection_identity_check(u, slots);
    REQUIRE(res.rhs.is_exact());
    REQUIRE(res.equal);
  }
}

TEST_CASE("float backend") {
  Zonotope k(3, {{{Scalar::from_double(1), Scalar::from_double(0), Scalar::from_double(0)}, Scalar::from_double(1)},
                 {{Scalar::from_double(0), Scalar::from_double(1), Scalar::from_double(0)}, Scalar::from_double(1)},
                 {{Scalar::from_double(0), Scalar::from_double(0), Scalar::from_double(1)}, Scalar::from_double(1)}});
  CHECK(zonotope_volume(k).to_double() == doctest::Approx(8));
  std::vector<Slot> lkk{SymmetricPolytope::cross_polytope(3), k, k};
  Scalar v = mixed_volume(lkk);
  CHECK_FALSE(v.is_exact());
  CHECK(v.to_double() == doctest::Approx(8));
}
