// SPDX-License-Identifier: Apache-2.0
//
// JSON schemas and SVG rendering.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "tc/approx.hpp"
#include "tc/caustic.hpp"
#include "tc/engine.hpp"
#include "tc/reconstruct.hpp"

namespace tc {

using Json = nlohmann::json;

/// Floats in JSON carry 12 significant digits.
double round12(double v);

Json to_json(const Rational& r);
Rational rational_from_json(const Json& j);  ///< "p/q", "p" or an integer; throws ParseError
Json to_json(const RationalPoint& p);
Json to_json(const RealPoint& p);
Json to_json(LatticeVector v);
Json to_json(Covector l);

Json polygon_to_json(const RationalPolygon& p);
/// {"vertices": [[x, y], ...]}; throws ParseError or GeometryError.
RationalPolygon polygon_from_json(const Json& j);

Json state_to_json(const WaveFrontState& s);

Json caustic_to_json(const ExactCaustic& g);
Json caustic_to_json(const RealCaustic& g);
Json result_to_json(const ExactResult& r);  ///< caustic plus event log
ExactCaustic exact_caustic_from_json(const Json& j);
RealCaustic real_caustic_from_json(const Json& j);
bool caustic_json_is_exact(const Json& j);

Json report_to_json(const VerificationReport& r);

Json abstract_to_json(const AbstractCaustic& a);
AbstractCaustic abstract_from_json(const Json& j);  ///< throws ParseError
Json realizability_to_json(const RealizabilityReport& r, const AbstractCaustic& a);

Json points_to_json(const std::vector<RealPoint>& pts);

/// Reads a JSON file; throws ParseError on IO or syntax errors.
Json read_json_file(const std::string& path);
/// Pretty-printed with a trailing newline.
std::string dump(const Json& j);

struct RenderSpec {
  int width = 640;
  int height = 640;
  double margin = 24.0;
  double base_stroke = 1.0;
  double stroke_per_weight = 1.25;  ///< stroke width = base + per_weight * weight
  bool labels = false;
  std::vector<Rational> front_times;  ///< wave fronts overlaid on exact caustics

  double stroke(std::int64_t weight) const { return base_stroke + stroke_per_weight * static_cast<double>(weight); }
};

std::string svg_exact(const RationalPolygon& poly, const ExactCaustic& g, const RenderSpec& spec);
std::string svg_real(const RealCaustic& g, const std::vector<RealPoint>& boundary, const RenderSpec& spec);
/// Lattice-approximation overlay: domain window, member points and front points.
std::string svg_points(const std::vector<RealPoint>& members, const std::vector<RealPoint>& front, double h,
                       double xmin, double ymin, double xmax, double ymax, const RenderSpec& spec);

}  // namespace tc
