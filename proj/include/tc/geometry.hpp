// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "tc/lattice.hpp"
#include "tc/rational.hpp"

namespace tc {

template <class Num>
struct Point2 {
  Num x{};
  Num y{};
  friend bool operator==(const Point2& p, const Point2& q) { return p.x == q.x && p.y == q.y; }
  friend bool operator<(const Point2& p, const Point2& q) { return p.y < q.y || (p.y == q.y && p.x < q.x); }
};

using RationalPoint = Point2<Rational>;
using RealPoint = Point2<double>;

template <class Num>
Point2<Num> operator+(const Point2<Num>& p, const Point2<Num>& q) {
  return {Num(p.x + q.x), Num(p.y + q.y)};
}
template <class Num>
Point2<Num> operator-(const Point2<Num>& p, const Point2<Num>& q) {
  return {Num(p.x - q.x), Num(p.y - q.y)};
}
template <class Num>
Point2<Num> operator*(const Num& k, const Point2<Num>& p) {
  return {Num(k * p.x), Num(k * p.y)};
}

template <class Num>
Point2<Num> lift(LatticeVector v) {
  return {Num(static_cast<long>(v.x)), Num(static_cast<long>(v.y))};
}

template <class Num>
Num cross(const Point2<Num>& u, const Point2<Num>& v) {
  return Num(u.x * v.y - u.y * v.x);
}

/// Sign of det(b - a, c - a); positive for a left turn.
template <class Num>
Num orient(const Point2<Num>& a, const Point2<Num>& b, const Point2<Num>& c) {
  return cross(b - a, c - a);
}

template <class Num>
Num evaluate(Covector l, const Point2<Num>& p) {
  return Num(Num(static_cast<long>(l.a)) * p.x + Num(static_cast<long>(l.b)) * p.y);
}

/// Strict convex hull (collinear points dropped), counter-clockwise, starting
/// at the lowest-then-leftmost point. Duplicates are allowed in the input.
template <class Num>
std::vector<Point2<Num>> convex_hull(std::vector<Point2<Num>> pts) {
  std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Point2<Num>> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) {
    // All input points were collinear: return the two extremes.
    return {pts.front(), pts.back()};
  }
  auto start = std::min_element(hull.begin(), hull.end());
  std::rotate(hull.begin(), start, hull.end());
  return hull;
}

/// Lattice length of a rational vector that is a multiple of a lattice
/// direction; also returns that primitive direction.
struct LatticeMeasure {
  LatticeVector direction;
  Rational length;
};
LatticeMeasure lattice_measure(const RationalPoint& v);

inline double to_double(const Rational& r) { return r.get_d(); }
inline double to_double(double d) { return d; }

inline RealPoint to_real(const RationalPoint& p) { return {p.x.get_d(), p.y.get_d()}; }

}  // namespace tc
