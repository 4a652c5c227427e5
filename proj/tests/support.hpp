// SPDX-License-Identifier: Apache-2.0
//
// Shared fixtures and brute-force oracles for the test suite.
#pragma once

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <utility>
#include <vector>

#include "tc/domain.hpp"
#include "tc/geometry.hpp"
#include "tc/lattice.hpp"

namespace tc::test {

inline RationalPolygon poly(std::initializer_list<std::pair<long, long>> pts) {
  std::vector<RationalPoint> v;
  for (const auto& [x, y] : pts) v.push_back({Rational(x), Rational(y)});
  return RationalPolygon::from_vertices(std::move(v));
}

inline RationalPoint pt(const Rational& x, const Rational& y) { return {x, y}; }

inline RationalPolygon square2() { return poly({{0, 0}, {2, 0}, {2, 2}, {0, 2}}); }
inline RationalPolygon rectangle42() { return poly({{0, 0}, {4, 0}, {4, 2}, {0, 2}}); }
inline RationalPolygon triangle32() { return poly({{0, 0}, {3, 0}, {0, 2}}); }
inline RationalPolygon triangle21() { return poly({{0, 0}, {2, 0}, {0, 1}}); }

/// Vertices of the hull of all non-zero lattice points of the cone with
/// coordinates bounded by `bound`, restricted to the compact part (start to end).
inline std::vector<Covector> brute_force_hull(const DualCone& cone, std::int64_t bound) {
  const Covector s = cone.start(), e = cone.end();
  const bool ccw = det2(s, e) > 0;
  auto inside = [&](Covector l) {
    const std::int64_t d1 = det2(s, l), d2 = det2(l, e);
    return ccw ? d1 >= 0 && d2 >= 0 : d1 <= 0 && d2 <= 0;
  };
  std::vector<RealPoint> pts;
  for (std::int64_t a = -bound; a <= bound; ++a) {
    for (std::int64_t b = -bound; b <= bound; ++b) {
      if ((a != 0 || b != 0) && inside({a, b})) pts.push_back({static_cast<double>(a), static_cast<double>(b)});
    }
  }
  // The cone is salient, so adding far multiples of both generators closes
  // the hull without creating new compact edges.
  const double far = static_cast<double>(4 * bound);
  pts.push_back({far * s.a, far * s.b});
  pts.push_back({far * e.a, far * e.b});
  pts.push_back({far * (s.a + e.a), far * (s.b + e.b)});
  auto hull = convex_hull(pts);
  // Walk the hull from start to end on the side facing the origin.
  auto index_of = [&](Covector l) {
    for (std::size_t i = 0; i < hull.size(); ++i) {
      if (hull[i].x == l.a && hull[i].y == l.b) return i;
    }
    return hull.size();
  };
  const std::size_t i0 = index_of(s), i1 = index_of(e);
  std::vector<Covector> out;
  if (i0 == hull.size() || i1 == hull.size()) return out;
  const std::size_t n = hull.size();
  // Hull is CCW; the compact chain goes from start to end in the direction
  // that does not pass through the far points.
  auto chain = [&](bool forward) {
    std::vector<Covector> c;
    std::size_t i = i0;
    while (true) {
      c.push_back({static_cast<std::int64_t>(hull[i].x), static_cast<std::int64_t>(hull[i].y)});
      if (i == i1) break;
      i = forward ? (i + 1) % n : (i + n - 1) % n;
    }
    return c;
  };
  auto small = [&](const std::vector<Covector>& c) {
    return std::all_of(c.begin(), c.end(), [&](Covector l) { return std::abs(l.a) <= bound && std::abs(l.b) <= bound; });
  };
  out = chain(true);
  if (!small(out)) out = chain(false);
  return out;
}

}  // namespace tc::test
