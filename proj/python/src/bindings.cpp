// SPDX-License-Identifier: Apache-2.0
//
// Python module _core. Structured results cross the boundary as JSON text in
// the same schemas the tc command writes; the package decodes them.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tc/approx.hpp"
#include "tc/caustic.hpp"
#include "tc/engine.hpp"
#include "tc/io.hpp"
#include "tc/reconstruct.hpp"
#include "tc/smooth.hpp"

namespace py = pybind11;
using namespace tc;

namespace {

RationalPolygon polygon(const std::string& text) { return polygon_from_json(Json::parse(text)); }

std::string caustic(const std::string& poly, bool events) {
  const auto r = run(polygon(poly));
  return (events ? result_to_json(r) : caustic_to_json(r.caustic)).dump();
}

std::string verify(const std::string& caustic_text, const std::string& poly) {
  const Json j = Json::parse(caustic_text);
  VerificationReport r;
  if (caustic_json_is_exact(j)) {
    const auto g = exact_caustic_from_json(j);
    r = check_balancing(g);
    r.merge(check_local_models(g));
    if (!poly.empty()) {
      const auto p = polygon(poly);
      r.merge(check_noether(p, g));
      r.merge(check_times_lengths(p, g));
    }
  } else {
    const auto g = real_caustic_from_json(j);
    r = check_balancing(g);
    r.merge(check_local_models(g));
  }
  return report_to_json(r).dump();
}

std::string smooth(const std::string& domain, double param, double eps, int depth) {
  return caustic_to_json(build_caustic(builtin_oracle(domain, param), eps, depth)).dump();
}

std::vector<std::pair<double, double>> approx(const std::string& domain, double h, double t,
                                              std::pair<std::int64_t, std::int64_t> b1,
                                              std::pair<std::int64_t, std::int64_t> b2, double r) {
  PlaneDomain d;
  if (domain == "staircase1") {
    d = staircase_cone(1);
  } else if (domain == "staircase2") {
    d = staircase_cone(2);
  } else if (domain == "disc") {
    d = disc_domain(r);
  } else {
    throw std::invalid_argument("unknown domain " + domain);
  }
  std::vector<std::pair<double, double>> out;
  for (const auto& p : scaled_front(d, h, t, Basis({b1.first, b1.second}, {b2.first, b2.second}))) {
    out.emplace_back(p.x, p.y);
  }
  return out;
}

std::string reconstruct(const std::string& text) {
  const Json j = Json::parse(text);
  Json out;
  AbstractCaustic a;
  if (j.contains("exact")) {
    const auto g = exact_caustic_from_json(j);
    a = extract_abstract(g);
    const auto dom = reconstruct_domain(g);
    Json v = Json::array();
    for (const auto& p : dom.vertices) v.push_back(to_json(p));
    out["polygon"] = {{"vertices", v}, {"convex", dom.convex}};
  } else {
    a = abstract_from_json(j);
  }
  const auto rep = realizability_check(a);
  if (!out.contains("polygon")) {
    Json v = Json::array();
    for (const auto& p : rep.polygon) v.push_back(to_json(p));
    out["polygon"] = {{"vertices", v}, {"convex", rep.convex}};
  }
  out["realizability"] = realizability_to_json(rep, a);
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Tropical caustics of convex domains";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_ValueError);
  py::register_exception<EngineError>(m, "EngineError", PyExc_RuntimeError);
  py::register_exception<ReconstructError>(m, "ReconstructError", PyExc_ValueError);

  m.def("caustic", &caustic, py::arg("polygon"), py::arg("events") = false,
        "Caustic JSON of a polygon given as {\"vertices\": [[x, y], ...]} JSON.");
  m.def(
      "propagate",
      [](const std::string& poly, const std::string& t) {
        return state_to_json(propagate(polygon(poly), parse_rational(t))).dump();
      },
      py::arg("polygon"), py::arg("t"));
  m.def(
      "interior_hull_step", [](const std::string& poly) { return state_to_json(interior_hull_step(polygon(poly))).dump(); },
      py::arg("polygon"));
  m.def("verify", &verify, py::arg("caustic"), py::arg("polygon") = "");
  m.def(
      "round_trip", [](const std::string& poly) { return round_trip_check(polygon(poly)).passed(); }, py::arg("polygon"));
  m.def(
      "disc_area_series",
      [](std::int64_t n) {
        const auto s = disc_area_series(n);
        return py::make_tuple(s.partial_sum, s.term_count);
      },
      py::arg("max_den"));
  m.def(
      "critical_time",
      [](const std::string& domain, double param, std::pair<std::int64_t, std::int64_t> l1,
         std::pair<std::int64_t, std::int64_t> l2) {
        return critical_time(builtin_oracle(domain, param), {l1.first, l1.second}, {l2.first, l2.second});
      },
      py::arg("domain"), py::arg("param"), py::arg("l1"), py::arg("l2"));
  m.def("smooth", &smooth, py::arg("domain"), py::arg("param") = 1.0, py::arg("eps") = 1e-3, py::arg("depth") = 10);
  m.def("approx", &approx, py::arg("domain"), py::arg("h"), py::arg("t"), py::arg("b1") = std::pair{1, 0},
        py::arg("b2") = std::pair{0, 1}, py::arg("r") = 1.0);
  m.def("reconstruct", &reconstruct, py::arg("graph"));
}
