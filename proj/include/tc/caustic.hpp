// SPDX-License-Identifier: Apache-2.0
//
// Caustic graph data model and its verification checks.
#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "tc/domain.hpp"
#include "tc/geometry.hpp"
#include "tc/lattice.hpp"

namespace tc {

enum class VertexKind { Leaf, Branch, FinalPoint, FinalSegmentEnd, Stub };
enum class EdgeKind { Trajectory, FinalSegment, Ray };
enum class FinalKind { None, Point, Segment };

const char* to_string(VertexKind k);
const char* to_string(EdgeKind k);
const char* to_string(FinalKind k);
VertexKind vertex_kind_from_string(const std::string& s);
EdgeKind edge_kind_from_string(const std::string& s);
FinalKind final_kind_from_string(const std::string& s);

/// Edge endpoint used for rays escaping to infinity.
inline constexpr int kAtInfinity = -1;

template <class Num>
struct CausticVertex {
  int id = 0;
  Point2<Num> pos;
  Num time{};
  VertexKind kind = VertexKind::Leaf;
};

/// A trajectory edge runs from its earlier endpoint (`from`) to its later one
/// (`to`); `direction` is the primitive velocity, `length` the lattice length.
template <class Num>
struct CausticEdge {
  int from = 0;
  int to = 0;
  LatticeVector direction;
  std::int64_t weight = 1;
  Num length{};
  Covector left;   ///< inward normal of the front edge before the vertex
  Covector right;  ///< inward normal of the front edge after it
  EdgeKind kind = EdgeKind::Trajectory;

  LatticeVector momentum() const { return weight * direction; }
};

template <class Num>
struct CausticGraph {
  std::vector<CausticVertex<Num>> vertices;
  std::vector<CausticEdge<Num>> edges;
  FinalKind final_kind = FinalKind::None;
  std::vector<int> final_vertices;  ///< one vertex (point) or two (segment ends)
  Num final_time{};
  std::vector<int> leaf_order;  ///< boundary corners in CCW order

  int add_vertex(const Point2<Num>& p, const Num& t, VertexKind k) {
    const int id = static_cast<int>(vertices.size());
    vertices.push_back({id, p, t, k});
    return id;
  }
  const CausticEdge<Num>* final_segment() const {
    for (const auto& e : edges) {
      if (e.kind == EdgeKind::FinalSegment) return &e;
    }
    return nullptr;
  }
};

using ExactCaustic = CausticGraph<Rational>;
using RealCaustic = CausticGraph<double>;

RealCaustic to_real(const ExactCaustic& g);

enum class CheckStatus { Pass, Fail, NotComparable };
const char* to_string(CheckStatus s);

struct CheckResult {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::vector<std::string> witnesses;  ///< concrete counterexamples on failure
  double max_residual = 0.0;
  bool passed() const { return status == CheckStatus::Pass; }
};

struct VerificationReport {
  std::vector<CheckResult> checks;
  bool passed() const;
  void merge(const VerificationReport& other);
  const CheckResult* find(const std::string& name) const;
};

VerificationReport check_balancing(const ExactCaustic& g);
VerificationReport check_balancing(const RealCaustic& g, double tol = 1e-9);
VerificationReport check_local_models(const ExactCaustic& g);
VerificationReport check_local_models(const RealCaustic& g, double tol = 1e-9);

/// lattice perimeter + sum(weight * length) == 4 * |final segment| + 12 * t_final,
/// with the final segment counted at weight 2 on the left-hand side.
VerificationReport check_noether(const RationalPolygon& poly, const ExactCaustic& g);

/// Edge lattice lengths equal endpoint time differences; vertex times equal
/// the distance series.
VerificationReport check_times_lengths(const RationalPolygon& poly, const ExactCaustic& g);

/// Runs P, Q and P+Q and compares corresponding edge lengths.
VerificationReport check_minkowski_additivity(const RationalPolygon& p, const RationalPolygon& q);

/// Number of lattice points strictly inside the closed lattice polygon whose
/// edge vectors are `edges` (taken in the given order).
std::int64_t interior_lattice_points(const std::vector<LatticeVector>& edges);

/// Sorts vectors counter-clockwise starting from the positive x axis.
void sort_by_angle(std::vector<LatticeVector>& v);

}  // namespace tc
