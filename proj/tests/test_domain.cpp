// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tc/corpus.hpp"
#include "tc/domain.hpp"

using namespace tc;
using test::poly;

namespace {

bool is_polygon(const WaveFrontState& s, const RationalPolygon& p) {
  const auto* q = std::get_if<RationalPolygon>(&s);
  return q && *q == p;
}

Rational q(long n, long d = 1) { return make_rational(n, d); }

}  // namespace

TEST_CASE("polygon construction") {
  CHECK(test::square2().size() == 4);
  CHECK(test::triangle32().size() == 3);
  CHECK_THROWS_AS(poly({{0, 0}, {1, 0}, {2, 0}, {0, 2}}), GeometryError);
  CHECK_THROWS_AS(poly({{0, 0}, {2, 0}, {1, 1}, {2, 2}, {0, 2}}), GeometryError);
  // clockwise input is reoriented
  CHECK(poly({{0, 0}, {0, 2}, {2, 2}, {2, 0}}) == test::square2());
}

TEST_CASE("monomial sets") {
  auto ms = monomial_set(test::square2());
  CHECK(ms.size() == 4);
  for (const auto& m : {RationalMonomial{{1, 0}, q(0)}, RationalMonomial{{-1, 0}, q(2)},
                        RationalMonomial{{0, 1}, q(0)}, RationalMonomial{{0, -1}, q(2)}}) {
    CHECK(std::find(ms.begin(), ms.end(), m) != ms.end());
  }
  ms = monomial_set(test::triangle32());
  CHECK(ms.size() == 3);
  CHECK(std::find(ms.begin(), ms.end(), RationalMonomial{{-2, -3}, q(6)}) != ms.end());
}

TEST_CASE("propagate") {
  CHECK(is_polygon(propagate(test::square2(), q(1, 2)),
                   RationalPolygon::from_vertices({{q(1, 2), q(1, 2)}, {q(3, 2), q(1, 2)}, {q(3, 2), q(3, 2)}, {q(1, 2), q(3, 2)}})));
  CHECK(is_polygon(propagate(test::triangle32(), q(1, 2)),
                   RationalPolygon::from_vertices({{q(1, 2), q(1, 2)}, {q(2), q(1, 2)}, {q(1, 2), q(3, 2)}})));
  auto s = propagate(test::triangle32(), q(1));
  REQUIRE(std::holds_alternative<FrontPoint>(s));
  CHECK(std::get<FrontPoint>(s).p == test::pt(1, 1));
  CHECK(std::holds_alternative<FrontEmpty>(propagate(test::triangle32(), q(2))));
  s = propagate(test::rectangle42(), q(1));
  REQUIRE(std::holds_alternative<FrontSegment>(s));
  CHECK(same_state(s, FrontSegment{test::pt(1, 1), test::pt(3, 1)}));
  CHECK(is_polygon(propagate(test::square2(), q(0)), test::square2()));
}

TEST_CASE("distance series") {
  CHECK(distance_series_eval(test::square2(), test::pt(1, 1)) == 1);
  CHECK(distance_series_eval(test::triangle32(), test::pt(1, 1)) == 1);
  for (const auto& v : test::triangle32().vertices()) CHECK(distance_series_eval(test::triangle32(), v) == 0);
}

TEST_CASE("minkowski sums") {
  const auto unit = poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(minkowski_sum(unit, unit) == test::square2());
  const auto tri = poly({{0, 0}, {1, 0}, {0, 1}});
  const auto s = minkowski_sum(test::square2(), tri);
  CHECK(s.size() == 5);
  for (Covector n : {Covector{1, 0}, Covector{0, 1}, Covector{-1, 0}, Covector{0, -1}, Covector{-1, -1}}) {
    CHECK(support_constant(s, n) == support_constant(test::square2(), n) + support_constant(tri, n));
  }
  CHECK(minkowski_sum(test::square2(), poly({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == poly({{0, 0}, {3, 0}, {3, 3}, {0, 3}}));
  CHECK(translate(test::square2(), test::pt(1, 1)) == poly({{1, 1}, {3, 1}, {3, 3}, {1, 3}}));
}

TEST_CASE("lattice perimeter") {
  CHECK(lattice_perimeter(test::square2()) == 8);
  CHECK(lattice_perimeter(test::triangle32()) == 3 + 2 + 1);
}

TEST_CASE("propagation is monotone and satisfies Huygens") {
  std::mt19937_64 rng(corpus_seed() + 3);
  std::uniform_int_distribution<long> num(0, 12), den(1, 6);
  for (int i = 0; i < 60; ++i) {
    const auto p = random_lattice_polygon(rng, 15, 8);
    const Rational t = make_rational(num(rng), den(rng)), s = make_rational(num(rng), den(rng));
    CAPTURE(i);
    CHECK(same_state(propagate(propagate(p, t), s), propagate(p, Rational(t + s))));
    // every front vertex stays inside P
    const auto front = propagate(p, t);
    if (const auto* f = std::get_if<RationalPolygon>(&front)) {
      for (const auto& v : f->vertices()) CHECK(contains(p, v));
    }
  }
}

TEST_CASE("distance series is the time a point is swept") {
  std::mt19937_64 rng(corpus_seed() + 4);
  for (int i = 0; i < 40; ++i) {
    const auto p = random_lattice_polygon(rng, 10, 6);
    for (const auto& v : p.vertices()) {
      const RationalPoint c{(v.x + p.vertex(1).x + p.vertex(2).x) / 3, (v.y + p.vertex(1).y + p.vertex(2).y) / 3};
      const Rational d = distance_series_eval(p, c);
      if (d <= 0) continue;
      const auto at = propagate(p, d);
      if (const auto* f = std::get_if<RationalPolygon>(&at)) {
        CHECK(contains(*f, c));
        CHECK_FALSE(contains_strictly(*f, c));
      }
    }
  }
}
