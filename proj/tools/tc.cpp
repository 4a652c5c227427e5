// SPDX-License-Identifier: Apache-2.0
//
// tc: command-line front end.
//
// Exit codes: 0 success, 1 failed verification, 2 invalid input, 3 engine failure.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tc/approx.hpp"
#include "tc/caustic.hpp"
#include "tc/engine.hpp"
#include "tc/io.hpp"
#include "tc/reconstruct.hpp"
#include "tc/smooth.hpp"

namespace {

using namespace tc;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

RationalPolygon load_polygon(const std::string& path) {
  try {
    return polygon_from_json(read_json_file(path));
  } catch (const GeometryError& ex) {
    throw InputError(path + ": " + ex.what());
  }
}

std::vector<Rational> parse_times(const std::string& list) {
  std::vector<Rational> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse_rational(item));
  }
  return out;
}

LatticeVector parse_vector(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw InputError("basis vector \"" + s + "\" is not \"x,y\"");
  try {
    std::size_t used = 0;
    const std::string xs = s.substr(0, comma), ys = s.substr(comma + 1);
    const long long x = std::stoll(xs, &used);
    if (used != xs.size()) throw InputError("bad basis entry " + xs);
    const long long y = std::stoll(ys, &used);
    if (used != ys.size()) throw InputError("bad basis entry " + ys);
    return {x, y};
  } catch (const std::logic_error&) {
    throw InputError("bad basis vector \"" + s + "\"");
  }
}

Basis parse_basis(const std::string& s) {
  const auto semi = s.find(';');
  if (semi == std::string::npos) throw InputError("basis must look like \"x1,y1;x2,y2\"");
  try {
    return Basis(parse_vector(s.substr(0, semi)), parse_vector(s.substr(semi + 1)));
  } catch (const GeometryError& ex) {
    throw InputError(ex.what());
  } catch (const std::invalid_argument& ex) {
    throw InputError(ex.what());
  }
}

/// Unimodular bases with entries in [-2, 2], in a fixed order starting with
/// the standard one.
std::vector<Basis> basis_family(int count) {
  std::vector<Basis> out{Basis{}};
  for (int a = -2; a <= 2 && static_cast<int>(out.size()) < count; ++a) {
    for (int b = -2; b <= 2 && static_cast<int>(out.size()) < count; ++b) {
      for (int c = -2; c <= 2 && static_cast<int>(out.size()) < count; ++c) {
        for (int d = -2; d <= 2 && static_cast<int>(out.size()) < count; ++d) {
          if (a * d - b * c != 1 || (a == 1 && b == 0 && c == 0 && d == 1)) continue;
          out.emplace_back(LatticeVector{a, b}, LatticeVector{c, d});
        }
      }
    }
  }
  return out;
}

PlaneDomain approx_domain(const std::string& name, double r) {
  if (name == "staircase1") return staircase_cone(1);
  if (name == "staircase2") return staircase_cone(2);
  if (name == "disc") return disc_domain(r);
  if (name.rfind("polygon:", 0) == 0) return polygon_domain(load_polygon(name.substr(8)));
  throw InputError("unknown domain \"" + name + "\" (staircase1, staircase2, disc, polygon:FILE)");
}

std::vector<RealPoint> plane_points(const std::vector<LatticeVector>& pts, double h) {
  std::vector<RealPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({h * static_cast<double>(p.x), h * static_cast<double>(p.y)});
  return out;
}

VerificationReport merge(VerificationReport a, const VerificationReport& b) {
  a.checks.insert(a.checks.end(), b.checks.begin(), b.checks.end());
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tropical caustics of convex domains"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "tc 0.1.0");

  // caustic
  std::string c_in, c_out, c_svg, c_fronts;
  bool c_events = false, c_labels = false;
  auto* caustic = app.add_subcommand("caustic", "Run the particle engine on a polygon");
  caustic->add_option("polygon", c_in, "Polygon JSON")->required();
  caustic->add_option("-o,--out", c_out, "Output JSON (default stdout)");
  caustic->add_option("--svg", c_svg, "Also write an SVG drawing");
  caustic->add_option("--fronts", c_fronts, "Comma separated times of wave fronts drawn in the SVG");
  caustic->add_flag("--events", c_events, "Include the event log");
  caustic->add_flag("--labels", c_labels, "Label edges of weight above one");

  // propagate
  std::string p_in, p_t, p_out;
  auto* prop = app.add_subcommand("propagate", "Wave front of a polygon at a rational time");
  prop->add_option("polygon", p_in, "Polygon JSON")->required();
  prop->add_option("-t,--t", p_t, "Time, e.g. 1/2")->required();
  prop->add_option("-o,--out", p_out, "Output JSON");

  // series
  std::int64_t s_den = 100;
  auto* series = app.add_subcommand("series", "Partial sums of the disc area series");
  series->add_option("--max-den", s_den, "Denominator bound")->check(CLI::PositiveNumber);

  // smooth
  std::string m_domain = "disc", m_out, m_svg;
  double m_alpha = 1.6180339887498949, m_r = 1.0, m_eps = 1e-3;
  int m_depth = 10;
  bool m_series = false;
  std::int64_t m_den = 100;
  auto* smooth = app.add_subcommand("smooth", "Approximate caustic of a smooth domain");
  smooth->add_option("--domain", m_domain, "disc, ellipse, amoeba or cubic");
  smooth->add_option("--alpha", m_alpha, "Ellipse semi-axis ratio");
  smooth->add_option("--r", m_r, "Disc radius")->check(CLI::PositiveNumber);
  smooth->add_option("--eps", m_eps, "Stop refining below this critical time")->check(CLI::PositiveNumber);
  smooth->add_option("--depth", m_depth, "Maximum refinement depth")->check(CLI::NonNegativeNumber);
  smooth->add_flag("--series", m_series, "Print the disc area series instead");
  smooth->add_option("--max-den", m_den, "Denominator bound for --series")->check(CLI::PositiveNumber);
  smooth->add_option("-o,--out", m_out, "Output JSON");
  smooth->add_option("--svg", m_svg, "Also write an SVG drawing");

  // verify
  std::string v_caustic, v_poly, v_with, v_checks;
  double v_tol = 1e-9;
  auto* verify = app.add_subcommand("verify", "Check structural properties of a caustic");
  verify->add_option("caustic", v_caustic, "Caustic JSON")->required();
  verify->add_option("polygon", v_poly, "Polygon JSON it came from");
  verify->add_option("--checks", v_checks,
                     "Comma separated: balancing, local_models, noether, times_lengths, minkowski_additivity");
  verify->add_option("--with", v_with, "Second polygon for minkowski_additivity");
  verify->add_option("--tol", v_tol, "Tolerance for floating point caustics");

  // approx
  std::string a_domain = "staircase1", a_basis = "1,0;0,1", a_out, a_svg, a_h = "1", a_t = "1";
  double a_r = 1.0;
  int a_intersect = 0;
  bool a_boundary = false;
  auto* approx = app.add_subcommand("approx", "Lattice approximation of wave fronts");
  approx->set_help_flag("--help", "Print this help message and exit");  // frees -h for --h
  approx->add_option("--domain", a_domain, "staircase1, staircase2, disc or polygon:FILE");
  approx->add_option("--r", a_r, "Disc radius");
  approx->add_option("--h", a_h, "Mesh size (rational)");
  approx->add_option("--t", a_t, "Time (rational)");
  approx->add_option("--basis", a_basis, "Steps as \"x1,y1;x2,y2\"");
  approx->add_option("--intersect", a_intersect, "Intersect over the first N unimodular bases");
  approx->add_flag("--boundary", a_boundary, "Report only the boundary of the eroded set");
  approx->add_option("-o,--out", a_out, "Output JSON");
  approx->add_option("--svg", a_svg, "Also write an SVG drawing");

  // reconstruct
  std::string r_in, r_out;
  auto* recon = app.add_subcommand("reconstruct", "Realizability and domain of a weighted tree");
  recon->add_option("graph", r_in, "Abstract tree JSON or exact caustic JSON")->required();
  recon->add_option("-o,--out", r_out, "Output JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*caustic) {
      const RationalPolygon poly = load_polygon(c_in);
      const ExactResult r = run(poly);
      Json j = c_events ? result_to_json(r) : caustic_to_json(r.caustic);
      write_text(c_out, dump(j));
      if (!c_svg.empty()) {
        RenderSpec spec;
        spec.labels = c_labels;
        spec.front_times = parse_times(c_fronts);
        write_text(c_svg, svg_exact(poly, r.caustic, spec));
      }
    } else if (*prop) {
      const RationalPolygon poly = load_polygon(p_in);
      const Rational t = parse_rational(p_t);
      if (t < 0) throw InputError("time must be non-negative");
      write_text(p_out, dump(state_to_json(propagate(poly, t))));
    } else if (*series) {
      const SeriesResult s = disc_area_series(s_den);
      write_text("", dump(Json{{"max_den", s_den},
                               {"partial_sum", round12(s.partial_sum)},
                               {"terms", s.term_count},
                               {"gap", round12(4.0 - 3.14159265358979323846 - s.partial_sum)}}));
    } else if (*smooth) {
      if (m_series) {
        if (m_domain != "disc") throw InputError("--series is only defined for the disc");
        const SeriesResult s = disc_area_series(m_den);
        write_text(m_out, dump(Json{{"max_den", m_den},
                                    {"partial_sum", round12(s.partial_sum)},
                                    {"terms", s.term_count},
                                    {"gap", round12(4.0 - 3.14159265358979323846 - s.partial_sum)}}));
        return 0;
      }
      const double param = m_domain == "disc" ? m_r : m_alpha;
      SupportOracle o;
      try {
        o = builtin_oracle(m_domain, param);
      } catch (const std::invalid_argument& ex) {
        throw InputError(ex.what());
      }
      const RealCaustic g = build_caustic(o, m_eps, m_depth);
      Json j = caustic_to_json(g);
      j["domain"] = o.name;
      write_text(m_out, dump(j));
      if (!m_svg.empty()) {
        std::vector<RealPoint> boundary;
        if (o.closed) {
          // Tangency points of a dense fan outline the domain.
          for (int k = 0; k < 256; ++k) {
            const double a = 2 * 3.14159265358979323846 * k / 256;
            const std::int64_t den = 64;
            const LatticeVector v{static_cast<std::int64_t>(std::lround(den * std::cos(a))),
                                  static_cast<std::int64_t>(std::lround(den * std::sin(a)))};
            const std::int64_t g0 = std::gcd(v.x, v.y);
            if (g0 == 0) continue;
            boundary.push_back(tangency_point(o, Covector{v.x / g0, v.y / g0}));
          }
        }
        write_text(m_svg, svg_real(g, boundary, RenderSpec{}));
      }
    } else if (*verify) {
      const Json cj = read_json_file(v_caustic);
      std::vector<std::string> names;
      if (!v_checks.empty()) {
        std::stringstream ss(v_checks);
        std::string item;
        while (std::getline(ss, item, ',')) {
          if (!item.empty()) names.push_back(item);
        }
      } else {
        names = {"balancing", "local_models"};
        if (!v_poly.empty() && caustic_json_is_exact(cj)) {
          names.push_back("noether");
          names.push_back("times_lengths");
        }
        if (!v_with.empty()) names.push_back("minkowski_additivity");
      }
      VerificationReport report;
      if (caustic_json_is_exact(cj)) {
        const ExactCaustic g = exact_caustic_from_json(cj);
        for (const auto& n : names) {
          if (n == "balancing") {
            report = merge(report, check_balancing(g));
          } else if (n == "local_models") {
            report = merge(report, check_local_models(g));
          } else if (n == "noether" || n == "times_lengths" || n == "minkowski_additivity") {
            if (v_poly.empty()) throw InputError("check " + n + " needs the polygon");
            const RationalPolygon poly = load_polygon(v_poly);
            if (n == "noether") {
              report = merge(report, check_noether(poly, g));
            } else if (n == "times_lengths") {
              report = merge(report, check_times_lengths(poly, g));
            } else {
              if (v_with.empty()) throw InputError("minkowski_additivity needs --with");
              report = merge(report, check_minkowski_additivity(poly, load_polygon(v_with)));
            }
          } else {
            throw InputError("unknown check \"" + n + "\"");
          }
        }
      } else {
        const RealCaustic g = real_caustic_from_json(cj);
        for (const auto& n : names) {
          if (n == "balancing") {
            report = merge(report, check_balancing(g, v_tol));
          } else if (n == "local_models") {
            report = merge(report, check_local_models(g, v_tol));
          } else {
            throw InputError("check " + n + " needs an exact caustic");
          }
        }
      }
      write_text("", dump(report_to_json(report)));
      return report.passed() ? 0 : 1;
    } else if (*approx) {
      const Rational hq = parse_rational(a_h), tq = parse_rational(a_t);
      if (hq <= 0) throw InputError("--h must be positive");
      if (tq < 0) throw InputError("--t must be non-negative");
      const double h = hq.get_d(), t = tq.get_d();
      const PlaneDomain d = approx_domain(a_domain, a_r);
      const Basis b = parse_basis(a_basis);
      const int m = static_cast<int>(mpz_class(tq / hq).get_si());
      std::vector<RealPoint> front;
      if (a_intersect > 0) {
        front = basis_intersection_front(d, h, t, basis_family(a_intersect));
      } else if (a_boundary) {
        front = scaled_front_boundary(d, h, t, b);
      } else {
        front = scaled_front(d, h, t, b);
      }
      Json j{{"domain", a_domain},
             {"h", a_h},
             {"t", a_t},
             {"steps", m},
             {"basis", Json::array({to_json(b.b1), to_json(b.b2)})},
             {"count", front.size()},
             {"points", points_to_json(front)}};
      if (a_intersect > 0) j["intersect"] = a_intersect;
      write_text(a_out, dump(j));
      if (!a_svg.empty()) {
        const auto members = plane_points(lattice_points(d, h).points(), h);
        write_text(a_svg, svg_points(members, front, h, d.xmin, d.ymin, d.xmax, d.ymax, RenderSpec{}));
      }
    } else if (*recon) {
      const Json gj = read_json_file(r_in);
      const bool engine_graph = gj.is_object() && gj.contains("exact");
      AbstractCaustic a;
      Json j;
      if (engine_graph) {
        if (!caustic_json_is_exact(gj)) throw InputError("reconstruct needs an exact caustic");
        const ExactCaustic g = exact_caustic_from_json(gj);
        a = extract_abstract(g);
        const ReconstructedDomain dom = reconstruct_domain(g);
        Json poly = Json::array();
        for (const auto& p : dom.vertices) poly.push_back(to_json(p));
        j["polygon"] = {{"vertices", poly}, {"convex", dom.convex}};
      } else {
        a = abstract_from_json(gj);
      }
      RealizabilityReport rep;
      try {
        rep = realizability_check(a);
      } catch (const ReconstructError& ex) {
        throw InputError(ex.what());
      }
      if (!engine_graph) {
        Json poly = Json::array();
        for (const auto& p : rep.polygon) poly.push_back(to_json(p));
        j["polygon"] = {{"vertices", poly}, {"convex", rep.convex}};
      }
      j["abstract"] = abstract_to_json(a);
      j["realizability"] = realizability_to_json(rep, a);
      write_text(r_out, dump(j));
    }
  } catch (const EngineError& ex) {
    std::cerr << "tc: engine error: " << ex.what() << "\n";
    return 3;
  } catch (const ReconstructError& ex) {
    std::cerr << "tc: " << ex.what() << "\n";
    return 2;
  } catch (const InputError& ex) {
    std::cerr << "tc: " << ex.what() << "\n";
    return 2;
  } catch (const ParseError& ex) {
    std::cerr << "tc: " << ex.what() << "\n";
    return 2;
  } catch (const GeometryError& ex) {
    std::cerr << "tc: " << ex.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "tc: " << ex.what() << "\n";
    return 2;
  }
  return 0;
}
