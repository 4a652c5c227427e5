// SPDX-License-Identifier: Apache-2.0
//
// Discrete wave fronts: interior lattice hulls and basis-dependent erosion.
#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tc/domain.hpp"
#include "tc/lattice.hpp"

namespace tc {

/// Steps of the Cayley graph: +-b1, +-b2.
struct Basis {
  LatticeVector b1{1, 0};
  LatticeVector b2{0, 1};

  Basis() = default;
  Basis(LatticeVector u, LatticeVector v);  ///< throws unless |det| = 1
  std::int64_t reach() const;               ///< max coordinate of a step
};

struct Box {
  std::int64_t xmin = 0, ymin = 0, xmax = -1, ymax = -1;
  bool contains(LatticeVector p) const { return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax; }
  bool empty() const { return xmin > xmax || ymin > ymax; }
  Box grown(std::int64_t r) const { return {xmin - r, ymin - r, xmax + r, ymax + r}; }
};

/// Either an explicit finite set, or an indicator predicate restricted to a
/// window. Predicate sets keep the predicate outside the window, which lets
/// erosion stay exact inside it.
class LatticeSet {
 public:
  using Predicate = std::function<bool(std::int64_t, std::int64_t)>;

  static LatticeSet from_points(std::vector<LatticeVector> pts);
  /// Explicit set reported against a wider window; points must lie inside it.
  static LatticeSet from_points(std::vector<LatticeVector> pts, Box window);
  static LatticeSet from_predicate(Predicate inside, Box window);

  bool is_explicit() const { return !pred_; }
  const Box& box() const { return box_; }
  bool contains(LatticeVector p) const;
  /// Members inside the box, sorted by (x, y).
  std::vector<LatticeVector> points() const;
  std::size_t size() const { return points().size(); }

 private:
  std::vector<LatticeVector> pts_;  // sorted, explicit sets only
  Predicate pred_;
  Box box_;
};

bool operator==(const LatticeSet& a, const LatticeSet& b);

/// Convex hull of the strictly interior lattice points.
WaveFrontState interior_hull_step(const RationalPolygon& poly);

/// m-fold one-step erosion: a point survives a step when all four of its
/// Cayley neighbours are members. Explicit sets treat everything outside as
/// absent; predicate sets come back as predicate sets over the same window.
LatticeSet erosion(const LatticeSet& s, const Basis& b, int m);

/// Members with at least one Cayley neighbour outside the set.
std::vector<LatticeVector> boundary_points(const LatticeSet& s, const Basis& b);

/// Closed planar domain with a viewing window.
struct PlaneDomain {
  std::function<bool(double, double)> inside;
  double xmin = 0, ymin = 0, xmax = 0, ymax = 0;
};

/// Lattice set {n : h n in the domain} over the scaled window.
LatticeSet lattice_points(const PlaneDomain& d, double h);

/// h * erosion(Phi_h, b, floor(t / h)), as plane points.
std::vector<RealPoint> scaled_front(const PlaneDomain& d, double h, double t, const Basis& b);
/// Boundary of the eroded set only, scaled to the plane.
std::vector<RealPoint> scaled_front_boundary(const PlaneDomain& d, double h, double t, const Basis& b);

/// Intersection of the eroded sets over all bases, scaled to the plane.
std::vector<RealPoint> basis_intersection_front(const PlaneDomain& d, double h, double t,
                                                const std::vector<Basis>& bases);

double hausdorff(const std::vector<RealPoint>& a, const std::vector<RealPoint>& b);

PlaneDomain disc_domain(double r);
PlaneDomain polygon_domain(const RationalPolygon& poly);
/// The two equivalent non-convex cones: 1 = {x >= 2 or y <= 3},
/// 2 = {y <= 3 or y <= x + 1}, each with a fixed viewing window.
PlaneDomain staircase_cone(int which);

}  // namespace tc
