// SPDX-License-Identifier: Apache-2.0
#include "tc/smooth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tc/engine.hpp"

namespace tc {

namespace {

double dbl(std::int64_t v) { return static_cast<double>(v); }

class Refiner {
 public:
  Refiner(const SupportOracle& o, const BuildOptions& opt, RealCaustic& g) : o_(o), opt_(opt), g_(g) {}

  std::vector<int> leaves;

  // Grows the subtree below vertex `parent`, the collision of the pair (l1, l2) at time t.
  void expand(int parent, Covector l1, Covector l2, double t, int depth) {
    const Covector mu = l1 + l2;
    child(parent, l1, mu, t, depth + 1);
    child(parent, mu, l2, t, depth + 1);
  }

  // Vertex where the particle between l1 and l2 is born; recurses when it branches.
  int source(Covector l1, Covector l2, int depth, double& t) {
    t = critical_time(o_, l1, l2);
    if (t < opt_.rigid) {
      t = 0.0;
      const int v = g_.add_vertex(level_intersection(o_, l1, l2, 0.0), 0.0, VertexKind::Leaf);
      leaves.push_back(v);
      return v;
    }
    if (t <= opt_.eps || depth > opt_.max_depth) {
      return g_.add_vertex(branch_vertex(o_, l1, l2), t, VertexKind::Stub);
    }
    const int v = g_.add_vertex(branch_vertex(o_, l1, l2), t, VertexKind::Branch);
    expand(v, l1, l2, t, depth);
    return v;
  }

 private:
  void child(int parent, Covector l1, Covector l2, double t_parent, int depth) {
    double t = 0.0;
    const int v = source(l1, l2, depth, t);
    const Covector step = l2 - l1;
    CausticEdge<double> e;
    e.from = v;
    e.to = parent;
    e.direction = unit_pairing_direction(l1, l2);
    e.weight = gcd_abs(step.a, step.b);
    e.length = t_parent - t;
    e.left = l1;
    e.right = l2;
    g_.edges.push_back(e);
  }

  const SupportOracle& o_;
  const BuildOptions& opt_;
  RealCaustic& g_;
};

// Drops isolated vertices and renumbers.
RealCaustic compact(const RealCaustic& g) {
  std::vector<int> used(g.vertices.size(), 0);
  for (const auto& e : g.edges) {
    if (e.from >= 0) used[static_cast<std::size_t>(e.from)] = 1;
    if (e.to >= 0) used[static_cast<std::size_t>(e.to)] = 1;
  }
  for (int v : g.final_vertices) used[static_cast<std::size_t>(v)] = 1;
  std::vector<int> remap(g.vertices.size(), -1);
  RealCaustic out;
  for (const auto& v : g.vertices) {
    if (!used[static_cast<std::size_t>(v.id)]) continue;
    remap[static_cast<std::size_t>(v.id)] = out.add_vertex(v.pos, v.time, v.kind);
  }
  auto map = [&](int id) { return id < 0 ? id : remap[static_cast<std::size_t>(id)]; };
  for (auto e : g.edges) {
    e.from = map(e.from);
    e.to = map(e.to);
    out.edges.push_back(e);
  }
  for (int v : g.final_vertices) out.final_vertices.push_back(map(v));
  for (int v : g.leaf_order) {
    if (map(v) >= 0) out.leaf_order.push_back(map(v));
  }
  out.final_kind = g.final_kind;
  out.final_time = g.final_time;
  return out;
}

void validate_fan(const SupportOracle& o) {
  const auto& f = o.seed_fan;
  for (const auto& l : f) {
    if (!is_primitive(l)) throw GeometryError("seed normals must be primitive");
  }
  if (!o.closed) {
    if (f.size() != 2 || det2(f[0], f[1]) != 1) throw GeometryError("open seed fan must be a unimodular pair");
    return;
  }
  if (f.size() < 3) throw GeometryError("closed seed fan needs at least three normals");
  double turn = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Covector a = f[i];
    const Covector b = f[(i + 1) % f.size()];
    const std::int64_t d = det2(a, b);
    if (d <= 0) throw GeometryError("seed fan is not strictly counter-clockwise; minimal model is unbounded");
    if (d >= 2 && !o.corner_marked(i)) {
      std::ostringstream os;
      os << "seed pair " << a << ", " << b << " has det " << d << " but is not corner-marked";
      throw GeometryError(os.str());
    }
    turn += std::atan2(dbl(d), dbl(a.a * b.a + a.b * b.b));
  }
  if (std::abs(turn - 2 * std::numbers::pi) > 1e-6) throw GeometryError("seed fan must wind exactly once");
}

RealCaustic build_closed(const SupportOracle& o, const BuildOptions& opt) {
  const auto& f = o.seed_fan;
  const std::size_t n = f.size();
  std::vector<Monomial<double>> edges;
  std::vector<std::vector<Monomial<double>>> extras(n);
  for (const auto& l : f) edges.push_back({l, o(l)});
  for (std::size_t k = 0; k < n; ++k) {
    if (!o.corner_marked(k)) continue;
    const RealPoint corner = level_intersection(o, f[k], f[(k + 1) % n], 0.0);
    const auto hull = hull_boundary_in_cone(DualCone(f[k], f[(k + 1) % n]));
    for (std::size_t h = 1; h + 1 < hull.size(); ++h) extras[k].push_back({hull[h], -evaluate(hull[h], corner)});
  }
  const auto res = run_engine(make_engine_input(edges, extras));
  RealCaustic g = res.caustic;
  g.leaf_order.clear();
  Refiner refiner(o, opt, g);

  const std::size_t original_edges = g.edges.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int leaf = static_cast<int>(k);
    const Covector l1 = f[k];
    const Covector l2 = f[(k + 1) % n];
    if (o.corner_marked(k) || det2(l1, l2) != 1) {
      refiner.leaves.push_back(leaf);
      continue;
    }
    std::size_t ei = original_edges;
    for (std::size_t i = 0; i < original_edges; ++i) {
      if (g.edges[i].from == leaf) ei = i;
    }
    if (ei == original_edges) throw GeometryError("minimal model corner without a caustic edge");
    if (critical_time(o, l1, l2) < opt.rigid) {
      refiner.leaves.push_back(leaf);
      continue;
    }
    double t = 0.0;
    const int v = refiner.source(l1, l2, 1, t);
    auto& e = g.edges[ei];
    if (t >= g.vertices[static_cast<std::size_t>(e.to)].time) {
      throw GeometryError("critical time of a seed pair exceeds its minimal-model collision time");
    }
    e.from = v;
    e.length = g.vertices[static_cast<std::size_t>(e.to)].time - t;
  }
  g.leaf_order = refiner.leaves;
  return compact(g);
}

RealCaustic build_open(const SupportOracle& o, const BuildOptions& opt) {
  RealCaustic g;
  const Covector l1 = o.seed_fan[0];
  const Covector l2 = o.seed_fan[1];
  Refiner refiner(o, opt, g);
  double t = 0.0;
  const int apex = refiner.source(l1, l2, 0, t);
  CausticEdge<double> e;
  e.from = apex;
  e.to = kAtInfinity;
  e.direction = unit_pairing_direction(l1, l2);
  e.weight = 1;
  e.length = std::numeric_limits<double>::infinity();
  e.left = l1;
  e.right = l2;
  e.kind = EdgeKind::Ray;
  g.edges.push_back(e);
  g.final_kind = FinalKind::None;
  g.final_time = std::numeric_limits<double>::infinity();
  g.leaf_order = refiner.leaves;
  return g;
}

// c = -min over m in [-1,1] of a(m^2-1) + b(m^3-m); returns the minimizing m.
double cubic_argmin(double a, double b) {
  auto f = [&](double m) { return a * (m * m - 1) + b * (m * m * m - m); };
  std::vector<double> cand{-1.0, 1.0};
  // f'(m) = 3b m^2 + 2a m - b
  if (std::abs(b) < 1e-300) {
    cand.push_back(0.0);
  } else {
    const double disc = 4 * a * a + 12 * b * b;
    const double s = std::sqrt(disc);
    // Stable quadratic roots.
    const double q = -0.5 * (2 * a + std::copysign(s, a == 0 ? 1.0 : a));
    const double r1 = q / (3 * b);
    const double r2 = -b / q;
    for (double r : {r1, r2}) {
      if (r >= -1 && r <= 1) cand.push_back(r);
    }
  }
  double best = cand[0];
  for (double m : cand) {
    if (f(m) < f(best)) best = m;
  }
  return best;
}

}  // namespace

bool SupportOracle::corner_marked(std::size_t i) const {
  return std::find(corner_marks.begin(), corner_marks.end(), i) != corner_marks.end();
}

double critical_time(const SupportOracle& o, Covector l1, Covector l2, double tol) {
  if (std::abs(det2(l1, l2)) != 1) {
    std::ostringstream os;
    os << "critical_time needs a unimodular pair, got " << l1 << ", " << l2;
    throw GeometryError(os.str());
  }
  const double t = o(l1) + o(l2) - o(l1 + l2);
  if (t < -tol) {
    std::ostringstream os;
    os << "negative critical time " << t << " for " << l1 << ", " << l2 << " (oracle is not convex)";
    throw GeometryError(os.str());
  }
  return std::max(t, 0.0);
}

RealPoint level_intersection(const SupportOracle& o, Covector l1, Covector l2, double t) {
  const std::int64_t d = det2(l1, l2);
  if (d == 0) throw GeometryError("parallel support lines");
  const double r1 = t - o(l1);
  const double r2 = t - o(l2);
  return {(r1 * dbl(l2.b) - r2 * dbl(l1.b)) / dbl(d), (dbl(l1.a) * r2 - dbl(l2.a) * r1) / dbl(d)};
}

RealPoint branch_vertex(const SupportOracle& o, Covector l1, Covector l2) {
  return level_intersection(o, l1, l2, critical_time(o, l1, l2));
}

RealPoint tangency_point(const SupportOracle& o, Covector l) {
  if (!o.support_point) throw GeometryError("oracle " + o.name + " has no support point function");
  return o.support_point(dbl(l.a), dbl(l.b));
}

RealCaustic build_caustic(const SupportOracle& o, const BuildOptions& opt) {
  validate_fan(o);
  return o.closed ? build_closed(o, opt) : build_open(o, opt);
}

SeriesResult disc_area_series(std::int64_t max_denominator) {
  if (max_denominator < 1) throw GeometryError("max_denominator must be at least 1");
  SeriesResult out;
  std::vector<std::array<std::int64_t, 4>> stack{{1, 0, 0, 1}};
  while (!stack.empty()) {
    const auto [a, b, c, d] = stack.back();
    stack.pop_back();
    if (a + c > max_denominator || b + d > max_denominator) continue;
    const double s1 = std::hypot(dbl(a), dbl(b));
    const double s2 = std::hypot(dbl(c), dbl(d));
    const double s3 = std::hypot(dbl(a + c), dbl(b + d));
    // s1 + s2 - s3 without cancellation, using ad - bc = 1.
    const double t = 2.0 / ((s1 * s2 + dbl(a * c + b * d)) * (s1 + s2 + s3));
    out.partial_sum += 2 * t * t;
    ++out.term_count;
    stack.push_back({a, b, a + c, b + d});
    stack.push_back({a + c, b + d, c, d});
  }
  return out;
}

SupportOracle disc_oracle(double r) {
  if (!(r > 0)) throw GeometryError("disc radius must be positive");
  SupportOracle o;
  o.name = "disc";
  o.c = [r](double p, double q) { return r * std::hypot(p, q); };
  o.support_point = [r](double p, double q) {
    const double n = std::hypot(p, q);
    return RealPoint{-r * p / n, -r * q / n};
  };
  o.seed_fan = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  o.symmetry = "D4";
  return o;
}

SupportOracle ellipse_oracle(double alpha) {
  if (!(alpha > 0)) throw GeometryError("ellipse alpha must be positive");
  SupportOracle o;
  o.name = "ellipse";
  o.c = [alpha](double p, double q) { return std::hypot(p, alpha * q); };
  o.support_point = [alpha](double p, double q) {
    const double n = std::hypot(p, alpha * q);
    return RealPoint{-p / n, -alpha * alpha * q / n};
  };
  o.seed_fan = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  o.symmetry = "D2";
  return o;
}

SupportOracle amoeba_oracle() {
  SupportOracle o;
  o.name = "amoeba";
  auto weights = [](double a, double b) {
    if (a > 0 || b > 0 || (a == 0 && b == 0)) {
      throw GeometryError("amoeba support is unbounded outside the cone of (-1,0), (0,-1)");
    }
    return std::pair{-a, -b};
  };
  o.c = [weights](double a, double b) {
    const auto [p, q] = weights(a, b);
    const double s = p + q;
    return (p > 0 ? p * std::log(p / s) : 0.0) + (q > 0 ? q * std::log(q / s) : 0.0);
  };
  o.support_point = [weights](double a, double b) {
    const auto [p, q] = weights(a, b);
    return RealPoint{std::log(p / (p + q)), std::log(q / (p + q))};
  };
  o.seed_fan = {{-1, 0}, {0, -1}};
  o.closed = false;
  o.symmetry = "x<->y";
  return o;
}

SupportOracle nodal_cubic_oracle() {
  SupportOracle o;
  o.name = "cubic";
  o.c = [](double a, double b) {
    const double m = cubic_argmin(a, b);
    return -(a * (m * m - 1) + b * (m * m * m - m));
  };
  o.support_point = [](double a, double b) {
    const double m = cubic_argmin(a, b);
    return RealPoint{m * m - 1, m * m * m - m};
  };
  o.seed_fan = {{1, 0}, {0, 1}, {-1, 1}, {-1, -1}, {0, -1}};
  o.corner_marks = {2};
  o.symmetry = "y->-y";
  return o;
}

SupportOracle polygon_oracle(const RationalPolygon& poly) {
  SupportOracle o;
  o.name = "polygon";
  std::vector<RealPoint> verts;
  for (const auto& v : poly.vertices()) verts.push_back(to_real(v));
  auto argmin = [verts](double a, double b) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < verts.size(); ++i) {
      if (a * verts[i].x + b * verts[i].y < a * verts[best].x + b * verts[best].y) best = i;
    }
    return verts[best];
  };
  o.c = [argmin](double a, double b) {
    const RealPoint p = argmin(a, b);
    return -(a * p.x + b * p.y);
  };
  o.support_point = argmin;
  const std::size_t n = poly.size();
  for (std::size_t k = 0; k < n; ++k) o.seed_fan.push_back(poly.edge_normal((k + n - 1) % n));
  for (std::size_t k = 0; k < n; ++k) {
    if (det2(o.seed_fan[k], o.seed_fan[(k + 1) % n]) >= 2) o.corner_marks.push_back(k);
  }
  return o;
}

std::vector<std::string> builtin_oracle_names() { return {"disc", "ellipse", "amoeba", "cubic"}; }

SupportOracle builtin_oracle(const std::string& name, double param) {
  if (name == "disc") return disc_oracle(param);
  if (name == "ellipse") return ellipse_oracle(param);
  if (name == "amoeba") return amoeba_oracle();
  if (name == "cubic") return nodal_cubic_oracle();
  throw GeometryError("unknown domain: " + name);
}

}  // namespace tc
