// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tc/corpus.hpp"
#include "tc/lattice.hpp"

using namespace tc;

TEST_CASE("primitive splits off the gcd") {
  auto p = primitive(4, 6);
  CHECK(p.primitive == LatticeVector{2, 3});
  CHECK(p.multiplicity == 2);
  p = primitive(0, -5);
  CHECK(p.primitive == LatticeVector{0, -1});
  CHECK(p.multiplicity == 5);
  p = primitive(3, -7);
  CHECK(p.primitive == LatticeVector{3, -7});
  CHECK(p.multiplicity == 1);
  CHECK_THROWS_AS(primitive(0, 0), GeometryError);
}

TEST_CASE("det2") {
  CHECK(det2(Covector{1, 0}, Covector{0, 1}) == 1);
  CHECK(det2(Covector{0, 1}, Covector{-2, -3}) == 2);
  CHECK(det2(Covector{1, 0}, Covector{-2, -3}) == -3);
}

TEST_CASE("hull of a cone") {
  using V = std::vector<Covector>;
  CHECK(hull_boundary_in_cone(DualCone({1, 0}, {0, 1})) == V{{1, 0}, {0, 1}});
  CHECK(hull_boundary_in_cone(DualCone({0, 1}, {5, 2})) == V{{0, 1}, {2, 1}, {5, 2}});
  CHECK(hull_boundary_in_cone(DualCone({0, 1}, {-2, -3})) == V{{0, 1}, {-2, -3}});
  CHECK(hull_chain_in_cone(DualCone({1, 0}, {-2, -3})) == V{{1, 0}, {0, -1}, {-1, -2}, {-2, -3}});
}

TEST_CASE("cone rule") {
  using R = std::vector<CausticRay>;
  auto r = cone_rule(DualCone({1, 0}, {0, 1}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].direction == LatticeVector{1, 1});
  CHECK(r[0].weight == 1);

  r = cone_rule(DualCone({0, 1}, {5, 2}));
  REQUIRE(r.size() == 2);
  CHECK(r[0].direction == LatticeVector{0, 1});
  CHECK(r[0].weight == 2);
  CHECK(r[1].direction == LatticeVector{-1, 3});
  CHECK(r[1].weight == 1);
  for (const auto& ray : r) {
    CHECK(pairing(ray.left, ray.direction) == 1);
    CHECK(pairing(ray.right, ray.direction) == 1);
  }

  r = cone_rule(DualCone({1, 0}, {-2, -3}));
  REQUIRE(r.size() == 1);
  CHECK(r[0].direction == LatticeVector{1, -1});
  CHECK(r[0].weight == 3);
  (void)R{};
}

TEST_CASE("cone rule agrees with a brute-force hull") {
  std::mt19937_64 rng(corpus_seed() + 1);
  for (int i = 0; i < 200; ++i) {
    const DualCone cone = random_cone(rng, 12);
    const auto expect = test::brute_force_hull(cone, 40);
    CAPTURE(cone.start());
    CAPTURE(cone.end());
    CHECK(hull_boundary_in_cone(cone) == expect);
  }
}

TEST_CASE("hull chain is unimodular and rays satisfy the flank pairing") {
  std::mt19937_64 rng(corpus_seed() + 2);
  for (int i = 0; i < 300; ++i) {
    const DualCone cone = random_cone(rng, 50);
    const auto chain = hull_chain_in_cone(cone);
    REQUIRE(chain.size() >= 2);
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
      CHECK(std::abs(det2(chain[k], chain[k + 1])) == 1);
    }
    std::int64_t total = 0;
    for (const auto& ray : cone_rule(cone)) {
      CHECK(pairing(ray.left, ray.direction) == 1);
      CHECK(pairing(ray.right, ray.direction) == 1);
      CHECK(is_primitive(ray.direction));
      total += ray.weight;
    }
    CHECK(total == static_cast<std::int64_t>(chain.size()) - 1);
  }
}

TEST_CASE("momentum and normal step are inverse") {
  const Covector u{1, 0}, w{-2, -3};
  CHECK(normal_step(momentum_between(u, w)) == w - u);
  CHECK(unit_pairing_direction({1, 0}, {0, 1}) == LatticeVector{1, 1});
}
