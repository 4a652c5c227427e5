// SPDX-License-Identifier: Apache-2.0
//
// Integer lattice N (points, directions) and its dual M (covectors), plus the
// cone rule producing the caustic rays of a polygon corner.
#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace tc {

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Element of N.
struct LatticeVector {
  std::int64_t x = 0;
  std::int64_t y = 0;
  auto operator<=>(const LatticeVector&) const = default;
};

/// Element of M, acting on N by <(a,b),(x,y)> = ax + by.
struct Covector {
  std::int64_t a = 0;
  std::int64_t b = 0;
  auto operator<=>(const Covector&) const = default;
};

inline LatticeVector operator+(LatticeVector u, LatticeVector v) { return {u.x + v.x, u.y + v.y}; }
inline LatticeVector operator-(LatticeVector u, LatticeVector v) { return {u.x - v.x, u.y - v.y}; }
inline LatticeVector operator-(LatticeVector u) { return {-u.x, -u.y}; }
inline LatticeVector operator*(std::int64_t k, LatticeVector v) { return {k * v.x, k * v.y}; }
inline Covector operator+(Covector u, Covector v) { return {u.a + v.a, u.b + v.b}; }
inline Covector operator-(Covector u, Covector v) { return {u.a - v.a, u.b - v.b}; }
inline Covector operator-(Covector u) { return {-u.a, -u.b}; }
inline Covector operator*(std::int64_t k, Covector v) { return {k * v.a, k * v.b}; }

inline std::int64_t det2(LatticeVector u, LatticeVector v) { return u.x * v.y - u.y * v.x; }
inline std::int64_t det2(Covector u, Covector v) { return u.a * v.b - u.b * v.a; }
inline std::int64_t pairing(Covector l, LatticeVector v) { return l.a * v.x + l.b * v.y; }

inline std::int64_t gcd_abs(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline bool is_primitive(LatticeVector v) { return gcd_abs(v.x, v.y) == 1; }
inline bool is_primitive(Covector l) { return gcd_abs(l.a, l.b) == 1; }

struct PrimitiveDecomposition {
  LatticeVector primitive;
  std::int64_t multiplicity = 0;
};

/// v = multiplicity * primitive. Throws GeometryError on the zero vector.
PrimitiveDecomposition primitive(std::int64_t x, std::int64_t y);
inline PrimitiveDecomposition primitive(LatticeVector v) { return primitive(v.x, v.y); }
Covector primitive_covector(Covector l);

/// The unique v with <u,v> = <w,v> = 1, provided det(u,w) divides w - u
/// componentwise (always the case for consecutive vertices of a cone's
/// lattice hull and for A_n corners).
LatticeVector unit_pairing_direction(Covector u, Covector w);

/// Velocity of the wave-front vertex flanked by inward normals u (before)
/// and w (after) in counter-clockwise order; this is the 90-degree rotation
/// of w - u and equals mass * direction for an A_n corner.
inline LatticeVector momentum_between(Covector u, Covector w) { return {w.b - u.b, u.a - w.a}; }

/// Inverse of momentum_between: the covector step w - u producing momentum m.
inline Covector normal_step(LatticeVector m) { return {-m.y, m.x}; }

/// Salient cone in M spanned by two primitive covectors (either orientation).
class DualCone {
 public:
  DualCone(Covector start, Covector end);
  Covector start() const { return start_; }
  Covector end() const { return end_; }
  std::int64_t det() const { return det2(start_, end_); }

 private:
  Covector start_;
  Covector end_;
};

/// Vertices from start to end of the compact boundary of
/// conv((cone ∩ M) \ {0}); collinear lattice points are not vertices.
std::vector<Covector> hull_boundary_in_cone(const DualCone& cone);

/// Every lattice point on that boundary, including collinear ones; consecutive
/// points form unimodular pairs (the Hirzebruch-Jung chain).
std::vector<Covector> hull_chain_in_cone(const DualCone& cone);

struct CausticRay {
  LatticeVector direction;
  std::int64_t weight = 0;
  Covector left;   ///< hull vertex before the edge (flanking normal)
  Covector right;  ///< hull vertex after the edge
  bool operator==(const CausticRay&) const = default;
};

/// One ray per finite hull edge, in hull order.
std::vector<CausticRay> cone_rule(const DualCone& cone);

std::ostream& operator<<(std::ostream& os, LatticeVector v);
std::ostream& operator<<(std::ostream& os, Covector l);

}  // namespace tc
