// SPDX-License-Identifier: Apache-2.0
//
// Floating-point caustics of smooth or piecewise-smooth convex domains given
// by their support constants, refined along the Stern-Brocot tree.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tc/caustic.hpp"
#include "tc/domain.hpp"

namespace tc {

/// c(lambda) = -inf over the domain of lambda(p). Monomial values are
/// lambda(p) + c(lambda).
struct SupportOracle {
  std::string name;
  std::function<double(double, double)> c;
  /// Point of the boundary where lambda attains its infimum, when known.
  std::function<RealPoint(double, double)> support_point;
  std::vector<Covector> seed_fan;     ///< CCW
  std::vector<std::size_t> corner_marks;  ///< i marks the pair (seed_fan[i], seed_fan[i+1])
  bool closed = true;                 ///< false: open cone of two normals
  std::string symmetry;

  double operator()(Covector l) const { return c(static_cast<double>(l.a), static_cast<double>(l.b)); }
  bool corner_marked(std::size_t i) const;
};

/// c(l1) + c(l2) - c(l1 + l2). Throws GeometryError unless |det| = 1, or if
/// the value is negative beyond `tol` (non-convex oracle).
double critical_time(const SupportOracle& o, Covector l1, Covector l2, double tol = 1e-9);

/// Point where l1 + c(l1) = l2 + c(l2) = critical_time(l1, l2).
RealPoint branch_vertex(const SupportOracle& o, Covector l1, Covector l2);

/// Point where both monomials take the value t.
RealPoint level_intersection(const SupportOracle& o, Covector l1, Covector l2, double t);

RealPoint tangency_point(const SupportOracle& o, Covector l);

struct BuildOptions {
  double eps = 1e-3;
  int max_depth = 10;
  double rigid = 1e-12;  ///< pairs with a smaller critical time do not branch
};

RealCaustic build_caustic(const SupportOracle& o, const BuildOptions& opt = {});
inline RealCaustic build_caustic(const SupportOracle& o, double eps, int max_depth) {
  BuildOptions opt;
  opt.eps = eps;
  opt.max_depth = max_depth;
  return build_caustic(o, opt);
}

struct SeriesResult {
  double partial_sum = 0.0;
  std::int64_t term_count = 0;
};

/// 2 * sum of squared disc critical times over Stern-Brocot pairs
/// (a,b),(c,d) in the first quadrant with a+c, b+d <= max_denominator.
SeriesResult disc_area_series(std::int64_t max_denominator);

SupportOracle disc_oracle(double r = 1.0);
SupportOracle ellipse_oracle(double alpha);
/// Down-left complement component of the amoeba of 1 + x + y.
SupportOracle amoeba_oracle();
/// Loop of y^2 = x^2 (x + 1).
SupportOracle nodal_cubic_oracle();
SupportOracle polygon_oracle(const RationalPolygon& poly);

std::vector<std::string> builtin_oracle_names();
/// `param` is r for the disc and alpha for the ellipse; ignored otherwise.
SupportOracle builtin_oracle(const std::string& name, double param);

}  // namespace tc
