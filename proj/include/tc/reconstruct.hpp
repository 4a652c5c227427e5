// SPDX-License-Identifier: Apache-2.0
//
// Inverse direction: realizability of abstract metric trees as caustics and
// recovery of the domain.
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "tc/caustic.hpp"
#include "tc/engine.hpp"

namespace tc {

class ReconstructError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Edge oriented towards the final locus: `from` is the outer endpoint.
struct AbstractEdge {
  std::string id;
  std::string from;
  std::string to;
  Rational len;
  std::int64_t weight = 1;
};

/// One vertex of the final locus together with the inward normals around it.
/// For a segment end the normals form a chain from n to -n; for a final
/// point they form a closed cycle. The incoming edges of the vertex, in the
/// order listed, sit between consecutive normals.
struct FinalEnd {
  std::string vertex;
  std::vector<Covector> normals;
};

struct AbstractCaustic {
  std::vector<AbstractEdge> edges;
  FinalKind final_kind = FinalKind::None;
  std::string final_edge;  ///< segment only; runs from ends[0] to ends[1]
  std::vector<FinalEnd> ends;
};

/// Homogeneous linear form in the edge lengths, indexed like `edges`.
struct LinearForm {
  std::vector<Rational> coeff;
  Rational eval(const std::vector<AbstractEdge>& edges) const;
  bool has_negative() const;
  std::string str(const std::vector<AbstractEdge>& edges) const;
};

struct Inequality {
  LinearForm form;
  Rational value;
  bool strict = false;    ///< positivity constraints are strict
  bool trivial = false;   ///< follows from positivity (no negative coefficient)
  bool satisfied = true;
  std::string text;
};

enum class Verdict { Realizable, Boundary, Violated };
const char* to_string(Verdict v);

struct RealizabilityReport {
  std::vector<LinearForm> path_sums;  ///< final locus to each leaf, in boundary order
  std::string equalities;             ///< "l1=l2=..."
  bool equalities_hold = true;
  std::vector<Inequality> positivity;
  std::vector<Inequality> sides;
  Verdict verdict = Verdict::Realizable;
  /// Leaves in boundary order, placed with the first final vertex at the origin.
  std::vector<RationalPoint> polygon;
  bool convex = true;

  std::vector<const Inequality*> nontrivial_sides() const;
};

RealizabilityReport realizability_check(const AbstractCaustic& a);

struct ReconstructedDomain {
  std::vector<RationalPoint> vertices;
  bool convex = true;
};

/// Joins the leaves of an embedded caustic in their cyclic order.
ReconstructedDomain reconstruct_domain(const ExactCaustic& g);

/// Abstract tree of an engine caustic. Corners that emit several rays get one
/// leaf per ray.
AbstractCaustic extract_abstract(const ExactCaustic& g);

VerificationReport round_trip_check(const RationalPolygon& poly);

/// Removes repeated and collinear consecutive points; true when what is left
/// is a strictly convex polygon traversed once counter-clockwise.
bool is_convex_cycle(const std::vector<RationalPoint>& pts);

/// The tree with the final segment of the ellipse type and a weight 3 branch,
/// with the given lengths l0..l6.
AbstractCaustic branched_segment_example(const std::vector<Rational>& lengths);

}  // namespace tc
