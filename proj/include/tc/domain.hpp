// SPDX-License-Identifier: Apache-2.0
//
// Rational polygons, their tropical distance series and wave-front
// propagation.
#pragma once

#include <variant>
#include <vector>

#include "tc/geometry.hpp"
#include "tc/lattice.hpp"
#include "tc/rational.hpp"

namespace tc {

/// Affine function p -> <normal, p> + c; the half-plane {value >= 0}.
template <class Num>
struct Monomial {
  Covector normal;
  Num c{};
  Num value(const Point2<Num>& p) const { return Num(evaluate(normal, p) + c); }
  friend bool operator==(const Monomial& u, const Monomial& v) { return u.normal == v.normal && u.c == v.c; }
};

using RationalMonomial = Monomial<Rational>;

/// Compact, strictly convex polygon with rational vertices in CCW order.
class RationalPolygon {
 public:
  /// Validates and normalizes orientation to CCW (keeping the first vertex).
  /// Throws GeometryError on duplicates, collinear triples or non-convexity.
  static RationalPolygon from_vertices(std::vector<RationalPoint> pts);

  const std::vector<RationalPoint>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const RationalPoint& vertex(std::size_t i) const { return vertices_[i % vertices_.size()]; }

  /// Inward primitive normal of edge i (from vertex i to vertex i+1).
  Covector edge_normal(std::size_t i) const;
  /// Support monomial of edge i: value zero on the edge, positive inside.
  RationalMonomial edge_monomial(std::size_t i) const;

  bool is_lattice_polygon() const;

  /// Same cyclic vertex sequence, up to choice of starting vertex.
  friend bool operator==(const RationalPolygon& p, const RationalPolygon& q);

 private:
  explicit RationalPolygon(std::vector<RationalPoint> v) : vertices_(std::move(v)) {}
  std::vector<RationalPoint> vertices_;
};

struct FrontSegment {
  RationalPoint a;
  RationalPoint b;
};
struct FrontPoint {
  RationalPoint p;
};
struct FrontEmpty {};

using WaveFrontState = std::variant<RationalPolygon, FrontSegment, FrontPoint, FrontEmpty>;

bool same_state(const WaveFrontState& s, const WaveFrontState& t);

/// Edge monomials plus the interior hull vertices of every corner's dual cone,
/// in CCW cyclic order. The list starts with the normal of the edge ending at
/// vertex 0, so corner 0's extra monomials come first.
std::vector<RationalMonomial> monomial_set(const RationalPolygon& poly);

/// Support constant of `normal` on the polygon: -min over vertices.
Rational support_constant(const RationalPolygon& poly, Covector normal);

WaveFrontState propagate(const RationalPolygon& poly, const Rational& t);
WaveFrontState propagate(const WaveFrontState& state, const Rational& t);

/// Tropical distance series: min over the monomial set.
Rational distance_series_eval(const RationalPolygon& poly, const RationalPoint& p);

RationalPolygon minkowski_sum(const RationalPolygon& p, const RationalPolygon& q);
RationalPolygon translate(const RationalPolygon& p, const RationalPoint& v);

Rational lattice_perimeter(const RationalPolygon& poly);

/// Classifies a finite point set by its convex hull.
WaveFrontState state_from_points(std::vector<RationalPoint> pts);

bool contains(const RationalPolygon& poly, const RationalPoint& p);
bool contains_strictly(const RationalPolygon& poly, const RationalPoint& p);

}  // namespace tc
