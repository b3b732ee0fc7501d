#include <random>

#include "doctest.h"
#include "logbm/equality.hpp"
#include "logbm/inequalities.hpp"
#include "support.hpp"

using namespace logbm;

namespace {

Zonotope box(long a, long b, long c) {
  std::vector<Scalar> w{Scalar(a), Scalar(b), Scalar(c)};
  return Zonotope::box(w);
}

Zonotope with_diagonal() { return Zonotope(3, {{{1, 0, 0}, 1}, {{0, 1, 0}, 1}, {{0, 0, 1}, 1}, {{1, 1, 1}, 1}}); }

}  // namespace

TEST_CASE("alexandrov measure condition") {
  const Zonotope k = Zonotope::cube(3);
  auto same = check_alexandrov_condition(k, Body(k));
  CHECK(same.matched);
  CHECK(same.lhs.empty());
  CHECK(check_alexandrov_condition(k, Body(box(1, 2, 3))).matched);
  auto cross = check_alexandrov_condition(k, Body(SymmetricPolytope::cross_polytope(3)));
  CHECK_FALSE(cross.matched);
  CHECK(cross.max_discrepancy.sign() > 0);
  CHECK(check_local_logbm(k, SupportExpr::of(Body(SymmetricPolytope::cross_polytope(3)))).verdict == Verdict::kHolds);
}

TEST_CASE("generator graph") {
  auto g = generator_graph(Zonotope::cube(3));
  CHECK(g.edges.empty());
  CHECK(g.components.size() == 3);
  auto d = generator_graph(with_diagonal());
  CHECK(d.components.size() == 1);
  CHECK(generator_graph(Zonotope::cube(2)).components.size() == 2);

  // scaling and reordering leave the graph unchanged up to relabelling
  Zonotope shuffled(3, {{{2, 2, 2}, 3}, {{0, 0, 1}, 5}, {{1, 0, 0}, 1}, {{0, 1, 0}, 2}});
  CHECK(generator_graph(shuffled).components.size() == 1);
  Zonotope split(3, {{{1, 1, 0}, 3}, {{0, 0, 1}, 5}, {{1, -1, 0}, 1}});
  auto gs = generator_graph(split);
  CHECK(gs.components.size() == 3);
  Zonotope joined(3, {{{1, 1, 0}, 3}, {{0, 0, 1}, 5}, {{1, -1, 0}, 1}, {{1, 0, 0}, 1}});
  CHECK(generator_graph(joined).components.size() == 2);
}

TEST_CASE("certificates") {
  const Zonotope k = Zonotope::cube(3);
  auto c = certify_equality(k, Body(box(1, 2, 3)));
  REQUIRE(c.valid);
  CHECK(c.components.size() == 3);
  CHECK(c.scales == std::vector<Scalar>{Scalar(1), Scalar(2), Scalar(3)});
  CHECK(c.dims == std::vector<std::size_t>{1, 1, 1});

  auto self = certify_equality(k, Body(k));
  REQUIRE(self.valid);
  for (const auto& a : self.scales) CHECK(a == Scalar(1));

  auto homo = certify_equality(with_diagonal(), Body(with_diagonal().scaled(Scalar(mpq_class(7, 2)))));
  REQUIRE(homo.valid);
  CHECK(homo.components.size() == 1);
  CHECK(homo.scales.front() == Scalar(mpq_class(7, 2)));

  auto strict = certify_equality(k, Body(SymmetricPolytope::cross_polytope(3)));
  CHECK_FALSE(strict.valid);
  CHECK(strict.reason == "inequality strict");

  auto refuted = attempt_decomposition(with_diagonal(), Body(box(1, 2, 3)));
  CHECK_FALSE(refuted.valid);
  CHECK_FALSE(refuted.witness_atoms.empty());
}

TEST_CASE("direct sums: mixed volumes vanish off the dimension pattern") {
  // C1 spans a plane, C2 a line, in R^3
  Zonotope c1(3, {{{1, 0, 0}, 1}, {{1, 2, 0}, 1}, {{0, 1, 0}, 2}});
  Zonotope c2(3, {{{1, 1, 3}, 1}});
  for (int j = 0; j <= 3; ++j) {
    std::vector<Slot> slots;
    for (int i = 0; i < j; ++i) slots.emplace_back(c1);
    for (int i = j; i < 3; ++i) slots.emplace_back(c2);
    Scalar v = mixed_volume(slots);
    if (j == 2) {
      CHECK(v.sign() > 0);
    } else {
      CHECK(v.is_zero());
    }
  }
  // Vol(b1 C1 + b2 C2) = Gamma b1^2 b2
  Scalar gamma = zonotope_volume(c1 + c2);
  std::mt19937_64 rng(60);
  for (int trial = 0; trial < 5; ++trial) {
    Scalar b1(mpq_class(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 5 + 1)));
    Scalar b2(mpq_class(static_cast<long>(rng() % 9 + 1), static_cast<long>(rng() % 5 + 1)));
    CHECK(zonotope_volume(c1.scaled(b1) + c2.scaled(b2)) == gamma * b1 * b1 * b2);
  }
}

TEST_CASE("cone volume probe") {
  const Zonotope k = Zonotope::cube(3);
  auto same = cone_volume_uniqueness_probe(k, k);
  CHECK(same.equal_measures);
  CHECK(same.same_body);
  auto boxed = cone_volume_uniqueness_probe(k, box(1, 2, 3));
  CHECK_FALSE(boxed.equal_measures);
  CHECK_FALSE(boxed.same_body);
  // a box and a cube of equal volume share their cone volume measure
  auto twin = cone_volume_uniqueness_probe(k.scaled(Scalar(2)), box(1, 2, 4));
  CHECK(twin.equal_measures);
  CHECK_FALSE(twin.same_body);
}
