// SPDX-License-Identifier: Apache-2.0
#include "tc/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace tc {

namespace {

const char* kEdgeColor = "#1f3a93";
const char* kFinalColor = "#c0392b";
const char* kFrontColor = "#7f8c8d";

Json null_or(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round12(v);
}

double number(const Json& j) {
  if (j.is_null()) return std::numeric_limits<double>::infinity();
  if (!j.is_number()) throw ParseError("expected a number");
  return j.get<double>();
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw ParseError(std::string("expected an integer for ") + what);
  return j.get<std::int64_t>();
}

template <class T>
T pair_from(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2) throw ParseError(std::string("expected a pair for ") + what);
  return T{integer(j[0], what), integer(j[1], what)};
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

RationalPoint rpoint(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw ParseError("expected a point [x, y]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

template <class Num>
Json vertex_json(const CausticVertex<Num>& v, Json pos, Json time) {
  return Json{{"id", v.id}, {"pos", std::move(pos)}, {"time", std::move(time)}, {"kind", to_string(v.kind)}};
}

template <class Num>
Json edge_json(const CausticEdge<Num>& e, Json len) {
  Json j{{"from", e.from}, {"dir", to_json(e.direction)}, {"weight", e.weight}, {"len", std::move(len)},
         {"flank", Json::array({to_json(e.left), to_json(e.right)})}, {"kind", to_string(e.kind)}};
  j["to"] = e.to == kAtInfinity ? Json(nullptr) : Json(e.to);
  return j;
}

template <class Num>
Json graph_json(const CausticGraph<Num>& g, bool exact) {
  Json vs = Json::array();
  Json es = Json::array();
  auto num = [exact](const Num& v) -> Json {
    if constexpr (std::is_same_v<Num, Rational>) {
      (void)exact;
      return to_json(v);
    } else {
      return null_or(v);
    }
  };
  for (const auto& v : g.vertices) vs.push_back(vertex_json(v, to_json(v.pos), num(v.time)));
  for (const auto& e : g.edges) es.push_back(edge_json(e, num(e.length)));
  return Json{{"exact", exact},
              {"vertices", vs},
              {"edges", es},
              {"final", {{"kind", to_string(g.final_kind)}, {"vertices", g.final_vertices}}},
              {"t_final", num(g.final_time)},
              {"leaf_order", g.leaf_order}};
}

template <class Num, class Scalar, class Point>
CausticGraph<Num> graph_from(const Json& j, Scalar scalar, Point point) {
  CausticGraph<Num> g;
  try {
    for (const auto& v : field(j, "vertices")) {
      const int id = static_cast<int>(integer(field(v, "id"), "vertex id"));
      if (id != static_cast<int>(g.vertices.size())) throw ParseError("vertex ids must be 0, 1, 2, ... in order");
      g.add_vertex(point(field(v, "pos")), scalar(field(v, "time")), vertex_kind_from_string(field(v, "kind").get<std::string>()));
    }
    const int nv = static_cast<int>(g.vertices.size());
    for (const auto& e : field(j, "edges")) {
      CausticEdge<Num> c;
      c.from = static_cast<int>(integer(field(e, "from"), "edge from"));
      c.to = field(e, "to").is_null() ? kAtInfinity : static_cast<int>(integer(field(e, "to"), "edge to"));
      if (c.from < 0 || c.from >= nv || c.to >= nv || c.to < kAtInfinity) throw ParseError("edge endpoint out of range");
      c.direction = pair_from<LatticeVector>(field(e, "dir"), "dir");
      c.weight = integer(field(e, "weight"), "weight");
      if (c.weight < 1) throw ParseError("edge weight must be positive");
      c.length = scalar(field(e, "len"));
      if (e.contains("flank")) {
        const auto& f = e.at("flank");
        if (!f.is_array() || f.size() != 2) throw ParseError("flank must hold two normals");
        c.left = pair_from<Covector>(f[0], "flank");
        c.right = pair_from<Covector>(f[1], "flank");
      }
      if (e.contains("kind")) c.kind = edge_kind_from_string(e.at("kind").get<std::string>());
      g.edges.push_back(c);
    }
    const auto& fin = field(j, "final");
    g.final_kind = final_kind_from_string(field(fin, "kind").get<std::string>());
    for (const auto& v : field(fin, "vertices")) g.final_vertices.push_back(static_cast<int>(integer(v, "final vertex")));
    g.final_time = scalar(field(j, "t_final"));
    if (j.contains("leaf_order")) {
      for (const auto& v : j.at("leaf_order")) g.leaf_order.push_back(static_cast<int>(integer(v, "leaf")));
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed caustic JSON: ") + ex.what());
  } catch (const std::invalid_argument& ex) {
    throw ParseError(ex.what());
  }
  return g;
}

Json ineq_json(const Inequality& q) {
  return Json{{"text", q.text}, {"value", to_json(q.value)}, {"satisfied", q.satisfied}, {"trivial", q.trivial}};
}

std::string f4(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  std::string s = buf;
  if (s == "-0.0000") s = "0.0000";
  return s;
}

// Collects primitives in world coordinates and emits a y-up SVG.
class Canvas {
 public:
  explicit Canvas(const RenderSpec& spec) : spec_(spec) {}

  void include(const RealPoint& p) {
    xmin_ = std::min(xmin_, p.x);
    xmax_ = std::max(xmax_, p.x);
    ymin_ = std::min(ymin_, p.y);
    ymax_ = std::max(ymax_, p.y);
  }
  void line(RealPoint a, RealPoint b, const char* color, double width, const char* extra = "") {
    include(a);
    include(b);
    body_ << "<line x1=\"" << f4(a.x) << "\" y1=\"" << f4(a.y) << "\" x2=\"" << f4(b.x) << "\" y2=\"" << f4(b.y)
          << "\" stroke=\"" << color << "\" stroke-width=\"" << f4(width) << "\" vector-effect=\"non-scaling-stroke\""
          << extra << "/>\n";
  }
  void polygon(const std::vector<RealPoint>& pts, const char* stroke, const char* fill, double width) {
    for (const auto& p : pts) include(p);
    body_ << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) body_ << (i ? " " : "") << f4(pts[i].x) << "," << f4(pts[i].y);
    body_ << "\" stroke=\"" << stroke << "\" fill=\"" << fill << "\" stroke-width=\"" << f4(width)
          << "\" vector-effect=\"non-scaling-stroke\"/>\n";
  }
  void dot(RealPoint p, double r_px, const char* color) {
    include(p);
    dots_.push_back({p, r_px, color});
  }
  void label(RealPoint p, const std::string& text) { labels_.push_back({p, text}); }

  double extent() const { return std::max({xmax_ - xmin_, ymax_ - ymin_, 1e-9}); }

  std::string str() const {
    const double w = spec_.width, h = spec_.height, m = spec_.margin;
    const double bw = std::max(xmax_ - xmin_, 1e-9), bh = std::max(ymax_ - ymin_, 1e-9);
    const double s = std::min((w - 2 * m) / bw, (h - 2 * m) / bh);
    const double tx = m + 0.5 * ((w - 2 * m) - s * bw) - s * xmin_;
    const double ty = h - m - 0.5 * ((h - 2 * m) - s * bh) + s * ymin_;
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << spec_.width << "\" height=\"" << spec_.height
       << "\" viewBox=\"0 0 " << spec_.width << " " << spec_.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    os << "<g transform=\"translate(" << f4(tx) << "," << f4(ty) << ") scale(" << f4(s) << "," << f4(-s)
       << ")\" stroke-linecap=\"round\">\n";
    os << body_.str();
    for (const auto& d : dots_) {
      os << "<circle cx=\"" << f4(d.p.x) << "\" cy=\"" << f4(d.p.y) << "\" r=\"" << f4(d.r / s) << "\" fill=\""
         << d.color << "\"/>\n";
    }
    os << "</g>\n";
    for (const auto& l : labels_) {
      os << "<text x=\"" << f4(tx + s * l.p.x + 4) << "\" y=\"" << f4(ty - s * l.p.y - 4)
         << "\" font-family=\"sans-serif\" font-size=\"10\">" << l.text << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
  }

 private:
  struct Dot {
    RealPoint p;
    double r;
    const char* color;
  };
  struct Label {
    RealPoint p;
    std::string text;
  };
  const RenderSpec& spec_;
  double xmin_ = std::numeric_limits<double>::infinity(), xmax_ = -std::numeric_limits<double>::infinity();
  double ymin_ = std::numeric_limits<double>::infinity(), ymax_ = -std::numeric_limits<double>::infinity();
  std::ostringstream body_;
  std::vector<Dot> dots_;
  std::vector<Label> labels_;
};

void draw_edges(Canvas& c, const RealCaustic& g, const RenderSpec& spec, double ray_length) {
  for (const auto& e : g.edges) {
    const RealPoint a = g.vertices[static_cast<std::size_t>(e.from)].pos;
    RealPoint b;
    if (e.to == kAtInfinity) {
      const double n = std::hypot(static_cast<double>(e.direction.x), static_cast<double>(e.direction.y));
      b = {a.x + ray_length * e.direction.x / n, a.y + ray_length * e.direction.y / n};
    } else {
      b = g.vertices[static_cast<std::size_t>(e.to)].pos;
    }
    if (e.kind == EdgeKind::FinalSegment) {
      c.line(a, b, kFinalColor, spec.stroke(e.weight));
    } else if (e.to == kAtInfinity) {
      c.line(a, b, kEdgeColor, spec.stroke(e.weight), " stroke-dasharray=\"6,4\"");
    } else {
      c.line(a, b, kEdgeColor, spec.stroke(e.weight));
    }
    if (spec.labels && e.weight > 1) {
      c.label({0.5 * (a.x + b.x), 0.5 * (a.y + b.y)}, std::to_string(e.weight));
    }
  }
  for (int v : g.final_vertices) c.dot(g.vertices[static_cast<std::size_t>(v)].pos, 3.0, kFinalColor);
}

}  // namespace

double round12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  const double r = std::strtod(buf, nullptr);
  return r == 0.0 ? 0.0 : r;
}

Json to_json(const Rational& r) { return to_string(r); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  throw ParseError("expected a rational as \"p/q\" or an integer");
}

Json to_json(const RationalPoint& p) { return Json::array({to_json(p.x), to_json(p.y)}); }
Json to_json(const RealPoint& p) { return Json::array({null_or(p.x), null_or(p.y)}); }
Json to_json(LatticeVector v) { return Json::array({v.x, v.y}); }
Json to_json(Covector l) { return Json::array({l.a, l.b}); }

Json polygon_to_json(const RationalPolygon& p) {
  Json v = Json::array();
  for (const auto& x : p.vertices()) v.push_back(to_json(x));
  return Json{{"vertices", v}};
}

RationalPolygon polygon_from_json(const Json& j) {
  std::vector<RationalPoint> pts;
  const Json& v = j.is_array() ? j : field(j, "vertices");
  if (!v.is_array()) throw ParseError("\"vertices\" must be an array");
  for (const auto& p : v) pts.push_back(rpoint(p));
  return RationalPolygon::from_vertices(std::move(pts));
}

Json state_to_json(const WaveFrontState& s) {
  if (const auto* p = std::get_if<RationalPolygon>(&s)) {
    Json j = polygon_to_json(*p);
    j["kind"] = "polygon";
    return j;
  }
  if (const auto* seg = std::get_if<FrontSegment>(&s)) {
    return Json{{"kind", "segment"}, {"a", to_json(seg->a)}, {"b", to_json(seg->b)}};
  }
  if (const auto* pt = std::get_if<FrontPoint>(&s)) return Json{{"kind", "point"}, {"p", to_json(pt->p)}};
  return Json{{"kind", "empty"}, {"empty", true}};
}

Json caustic_to_json(const ExactCaustic& g) { return graph_json(g, true); }
Json caustic_to_json(const RealCaustic& g) { return graph_json(g, false); }

Json result_to_json(const ExactResult& r) {
  Json j = caustic_to_json(r.caustic);
  Json evs = Json::array();
  for (const auto& e : r.events) {
    Json in = Json::array();
    for (std::size_t i = 0; i < e.in_directions.size(); ++i) {
      in.push_back({{"particle", e.participants[i]}, {"dir", to_json(e.in_directions[i])}, {"mass", e.in_masses[i]}});
    }
    const char* outcome = e.outcome == EventOutcome::Particle       ? "particle"
                          : e.outcome == EventOutcome::Annihilation ? "annihilation"
                                                                    : "final_segment";
    Json ev{{"time", to_json(e.time)}, {"point", to_json(e.point)}, {"in", in}, {"outcome", outcome}, {"vertex", e.vertex}};
    if (e.outcome != EventOutcome::Annihilation) ev["out"] = {{"dir", to_json(e.out_direction)}, {"mass", e.out_mass}};
    evs.push_back(ev);
  }
  j["events"] = evs;
  return j;
}

bool caustic_json_is_exact(const Json& j) { return j.is_object() && j.value("exact", false); }

ExactCaustic exact_caustic_from_json(const Json& j) {
  return graph_from<Rational>(j, rational_from_json, rpoint);
}

RealCaustic real_caustic_from_json(const Json& j) {
  auto scalar = [](const Json& v) { return v.is_string() ? parse_rational(v.get<std::string>()).get_d() : number(v); };
  auto point = [&](const Json& v) {
    if (!v.is_array() || v.size() != 2) throw ParseError("expected a point [x, y]");
    return RealPoint{scalar(v[0]), scalar(v[1])};
  };
  return graph_from<double>(j, scalar, point);
}

Json report_to_json(const VerificationReport& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"status", to_string(c.status)},
                      {"witnesses", c.witnesses},
                      {"max_residual", round12(c.max_residual)}});
  }
  return Json{{"passed", r.passed()}, {"checks", checks}};
}

Json abstract_to_json(const AbstractCaustic& a) {
  Json edges = Json::array();
  for (const auto& e : a.edges) {
    edges.push_back({{"id", e.id}, {"from", e.from}, {"to", e.to}, {"len", to_json(e.len)}, {"weight", e.weight}});
  }
  Json fin{{"kind", to_string(a.final_kind)}};
  auto normals = [](const std::vector<Covector>& n) {
    Json out = Json::array();
    for (const auto& l : n) out.push_back(to_json(l));
    return out;
  };
  if (a.final_kind == FinalKind::Segment) {
    fin["edge"] = a.final_edge;
    Json ends = Json::array();
    for (const auto& e : a.ends) ends.push_back({{"vertex", e.vertex}, {"normals", normals(e.normals)}});
    fin["ends"] = ends;
  } else if (!a.ends.empty()) {
    fin["vertex"] = a.ends[0].vertex;
    fin["normals"] = normals(a.ends[0].normals);
  }
  return Json{{"edges", edges}, {"final", fin}};
}

AbstractCaustic abstract_from_json(const Json& j) {
  AbstractCaustic a;
  auto name = [](const Json& v) -> std::string {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    throw ParseError("vertex and edge ids must be strings or integers");
  };
  auto normals = [](const Json& v) {
    if (!v.is_array()) throw ParseError("\"normals\" must be an array");
    std::vector<Covector> out;
    for (const auto& l : v) out.push_back(pair_from<Covector>(l, "normal"));
    return out;
  };
  try {
    for (const auto& e : field(j, "edges")) {
      AbstractEdge ae;
      ae.id = name(field(e, "id"));
      ae.from = name(field(e, "from"));
      ae.to = name(field(e, "to"));
      ae.len = rational_from_json(field(e, "len"));
      ae.weight = e.contains("weight") ? integer(e.at("weight"), "weight") : 1;
      a.edges.push_back(ae);
    }
    const auto& fin = field(j, "final");
    const std::string kind = field(fin, "kind").get<std::string>();
    if (kind == "segment") {
      a.final_kind = FinalKind::Segment;
      a.final_edge = name(field(fin, "edge"));
      for (const auto& e : field(fin, "ends")) a.ends.push_back({name(field(e, "vertex")), normals(field(e, "normals"))});
    } else if (kind == "point") {
      a.final_kind = FinalKind::Point;
      a.ends.push_back({name(field(fin, "vertex")), normals(field(fin, "normals"))});
    } else {
      throw ParseError("unknown final kind \"" + kind + "\"");
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ParseError(std::string("malformed abstract caustic JSON: ") + ex.what());
  }
  return a;
}

Json realizability_to_json(const RealizabilityReport& r, const AbstractCaustic& a) {
  Json pos = Json::array();
  for (const auto& q : r.positivity) pos.push_back(ineq_json(q));
  Json sides = Json::array();
  for (const auto& q : r.sides) sides.push_back(ineq_json(q));
  Json poly = Json::array();
  for (const auto& p : r.polygon) poly.push_back(to_json(p));
  Json sums = Json::array();
  for (const auto& s : r.path_sums) sums.push_back(s.str(a.edges));
  return Json{{"verdict", to_string(r.verdict)},
              {"equalities", r.equalities},
              {"equalities_hold", r.equalities_hold},
              {"path_sums", sums},
              {"positivity", pos},
              {"sides", sides},
              {"polygon", poly},
              {"convex", r.convex}};
}

Json points_to_json(const std::vector<RealPoint>& pts) {
  Json out = Json::array();
  for (const auto& p : pts) out.push_back(to_json(p));
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::parse_error& ex) {
    throw ParseError(path + ": " + ex.what());
  }
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string svg_exact(const RationalPolygon& poly, const ExactCaustic& g, const RenderSpec& spec) {
  Canvas c(spec);
  std::vector<RealPoint> outline;
  for (const auto& v : poly.vertices()) outline.push_back(to_real(v));
  c.polygon(outline, "black", "#ecf0f1", 1.0);
  for (const auto& t : spec.front_times) {
    const WaveFrontState s = propagate(poly, t);
    if (const auto* p = std::get_if<RationalPolygon>(&s)) {
      std::vector<RealPoint> pts;
      for (const auto& v : p->vertices()) pts.push_back(to_real(v));
      c.polygon(pts, kFrontColor, "none", 0.75);
    } else if (const auto* seg = std::get_if<FrontSegment>(&s)) {
      c.line(to_real(seg->a), to_real(seg->b), kFrontColor, 0.75);
    }
  }
  const RealCaustic r = to_real(g);
  draw_edges(c, r, spec, 0.0);
  return c.str();
}

std::string svg_real(const RealCaustic& g, const std::vector<RealPoint>& boundary, const RenderSpec& spec) {
  Canvas c(spec);
  if (boundary.size() >= 2) c.polygon(boundary, "black", "#ecf0f1", 1.0);
  for (const auto& v : g.vertices) c.include(v.pos);
  draw_edges(c, g, spec, 0.5 * c.extent());
  return c.str();
}

std::string svg_points(const std::vector<RealPoint>& members, const std::vector<RealPoint>& front, double h,
                       double xmin, double ymin, double xmax, double ymax, const RenderSpec& spec) {
  Canvas c(spec);
  c.polygon({{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}}, "#bdc3c7", "none", 0.5);
  const double r = std::clamp(0.3 * h * (spec.width - 2 * spec.margin) / std::max(xmax - xmin, ymax - ymin), 0.6, 3.0);
  for (const auto& p : members) c.dot(p, r, "#95a5a6");
  for (const auto& p : front) c.dot(p, r * 1.3, kEdgeColor);
  return c.str();
}

}  // namespace tc
