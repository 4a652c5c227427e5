// SPDX-License-Identifier: Apache-2.0
#include "tc/caustic.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

#include "tc/engine.hpp"

namespace tc {

namespace {

template <class T>
std::string str(const T& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::string str(const Rational& v) { return to_string(v); }

CheckResult named(const char* name) {
  CheckResult r;
  r.name = name;
  return r;
}

VerificationReport single(CheckResult r) {
  VerificationReport rep;
  rep.checks.push_back(std::move(r));
  return rep;
}

void fail(CheckResult& r, std::string witness, double residual = 0.0) {
  r.status = CheckStatus::Fail;
  r.witnesses.push_back(std::move(witness));
  r.max_residual = std::max(r.max_residual, residual);
}

struct Incidence {
  std::vector<std::size_t> in;   // edges ending at the vertex
  std::vector<std::size_t> out;  // edges starting at the vertex
};

template <class Num>
std::vector<Incidence> incidence(const CausticGraph<Num>& g) {
  std::vector<Incidence> inc(g.vertices.size());
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.from >= 0) inc[static_cast<std::size_t>(e.from)].out.push_back(i);
    if (e.to >= 0) inc[static_cast<std::size_t>(e.to)].in.push_back(i);
  }
  return inc;
}

template <class Num>
VerificationReport balancing_impl(const CausticGraph<Num>& g) {
  CheckResult r = named("balancing");
  const auto inc = incidence(g);
  for (const auto& v : g.vertices) {
    if (v.kind == VertexKind::Leaf || v.kind == VertexKind::Stub) continue;
    LatticeVector sum{0, 0};
    const auto& vi = inc[static_cast<std::size_t>(v.id)];
    for (auto i : vi.out) sum = sum + g.edges[i].momentum();
    for (auto i : vi.in) sum = sum - g.edges[i].momentum();
    if (sum != LatticeVector{0, 0}) {
      fail(r, "vertex " + std::to_string(v.id) + ": weighted direction sum " + str(sum),
           static_cast<double>(std::abs(sum.x) + std::abs(sum.y)));
    }
  }
  return single(std::move(r));
}

std::string masses_str(std::vector<std::int64_t> m) {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < m.size(); ++i) os << (i ? "," : "") << m[i];
  os << "}";
  return os.str();
}

template <class Num>
VerificationReport local_models_impl(const CausticGraph<Num>& g) {
  CheckResult r = named("local_models");
  const auto inc = incidence(g);
  for (const auto& v : g.vertices) {
    const auto& vi = inc[static_cast<std::size_t>(v.id)];
    const std::string at = "vertex " + std::to_string(v.id);
    std::vector<LatticeVector> in_moms;
    std::vector<std::int64_t> in_masses;
    for (auto i : vi.in) {
      if (g.edges[i].kind == EdgeKind::FinalSegment) continue;
      in_moms.push_back(g.edges[i].momentum());
      in_masses.push_back(g.edges[i].weight);
    }
    switch (v.kind) {
      case VertexKind::Leaf:
      case VertexKind::Stub:
        break;
      case VertexKind::Branch: {
        if (in_moms.size() != 2 || vi.out.size() != 1) {
          fail(r, at + ": branch has " + std::to_string(in_moms.size()) + " incoming and " +
                      std::to_string(vi.out.size()) + " outgoing edges");
          break;
        }
        const auto& out = g.edges[vi.out[0]];
        if (out.weight != 1) fail(r, at + ": branch emits mass " + std::to_string(out.weight));
        if (in_masses[0] > 1 && in_masses[1] > 1) fail(r, at + ": two heavy incoming particles " + masses_str(in_masses));
        std::vector<std::int64_t> lens{in_masses[0], in_masses[1], out.weight};
        std::sort(lens.begin(), lens.end());
        const std::int64_t n = lens[2];
        const std::int64_t d = std::abs(det2(in_moms[0], in_moms[1]));
        if (lens[0] != 1 || lens[1] != 1 || d != n) {
          fail(r, at + ": dual triangle is not A_" + std::to_string(n - 1) + " (lengths " + masses_str(lens) +
                      ", area " + std::to_string(d) + ")");
        }
        break;
      }
      case VertexKind::FinalPoint: {
        std::vector<LatticeVector> e = in_moms;
        LatticeVector sum{0, 0};
        for (const auto& x : e) sum = sum + x;
        if (sum != LatticeVector{0, 0}) {
          fail(r, at + ": incoming momenta do not close up");
          break;
        }
        sort_by_angle(e);
        const auto interior = e.size() < 3 ? 0 : interior_lattice_points(e);
        if (interior != 1) {
          fail(r, at + ": final dual polygon has " + std::to_string(interior) + " interior lattice points");
        }
        break;
      }
      case VertexKind::FinalSegmentEnd: {
        std::vector<std::int64_t> m = in_masses;
        std::sort(m.begin(), m.end());
        const bool scheme = (m.size() == 2 && m[0] == m[1] && m[0] <= 2) ||
                            (m.size() == 3 && m[0] == 1 && m[1] == 1);
        if (!scheme) {
          fail(r, at + ": final segment end with masses " + masses_str(in_masses));
          break;
        }
        std::vector<LatticeVector> e = in_moms;
        LatticeVector sum{0, 0};
        for (const auto& x : e) sum = sum + x;
        e.push_back(-sum);
        sort_by_angle(e);
        const auto interior = interior_lattice_points(e);
        if (interior != 0) {
          fail(r, at + ": final segment end dual polygon has " + std::to_string(interior) + " interior points");
        }
        break;
      }
    }
  }
  return single(std::move(r));
}

}  // namespace

const char* to_string(VertexKind k) {
  switch (k) {
    case VertexKind::Leaf: return "leaf";
    case VertexKind::Branch: return "branch";
    case VertexKind::FinalPoint: return "final_point";
    case VertexKind::FinalSegmentEnd: return "final_segment_end";
    case VertexKind::Stub: return "stub";
  }
  return "?";
}

const char* to_string(EdgeKind k) {
  switch (k) {
    case EdgeKind::Trajectory: return "trajectory";
    case EdgeKind::FinalSegment: return "final_segment";
    case EdgeKind::Ray: return "ray";
  }
  return "?";
}

const char* to_string(FinalKind k) {
  switch (k) {
    case FinalKind::None: return "none";
    case FinalKind::Point: return "point";
    case FinalKind::Segment: return "segment";
  }
  return "?";
}

const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::NotComparable: return "not comparable";
  }
  return "?";
}

VertexKind vertex_kind_from_string(const std::string& s) {
  for (auto k : {VertexKind::Leaf, VertexKind::Branch, VertexKind::FinalPoint, VertexKind::FinalSegmentEnd,
                 VertexKind::Stub}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown vertex kind: " + s);
}

EdgeKind edge_kind_from_string(const std::string& s) {
  for (auto k : {EdgeKind::Trajectory, EdgeKind::FinalSegment, EdgeKind::Ray}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown edge kind: " + s);
}

FinalKind final_kind_from_string(const std::string& s) {
  for (auto k : {FinalKind::None, FinalKind::Point, FinalKind::Segment}) {
    if (s == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown final kind: " + s);
}

RealCaustic to_real(const ExactCaustic& g) {
  RealCaustic r;
  for (const auto& v : g.vertices) r.vertices.push_back({v.id, to_real(v.pos), v.time.get_d(), v.kind});
  for (const auto& e : g.edges) {
    r.edges.push_back({e.from, e.to, e.direction, e.weight, e.length.get_d(), e.left, e.right, e.kind});
  }
  r.final_kind = g.final_kind;
  r.final_vertices = g.final_vertices;
  r.final_time = g.final_time.get_d();
  r.leaf_order = g.leaf_order;
  return r;
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.status == CheckStatus::Fail; });
}

void VerificationReport::merge(const VerificationReport& other) {
  checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

const CheckResult* VerificationReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

std::int64_t interior_lattice_points(const std::vector<LatticeVector>& edges) {
  LatticeVector cur{0, 0};
  std::int64_t twice_area = 0;
  std::int64_t boundary = 0;
  for (const auto& e : edges) {
    const LatticeVector next = cur + e;
    twice_area += det2(cur, next);
    boundary += gcd_abs(e.x, e.y);
    cur = next;
  }
  if (cur != LatticeVector{0, 0}) throw GeometryError("edge vectors do not close up");
  return (std::abs(twice_area) - boundary + 2) / 2;
}

void sort_by_angle(std::vector<LatticeVector>& v) {
  auto upper = [](LatticeVector u) { return u.y > 0 || (u.y == 0 && u.x > 0); };
  std::stable_sort(v.begin(), v.end(), [&](LatticeVector a, LatticeVector b) {
    if (upper(a) != upper(b)) return upper(a);
    return det2(a, b) > 0;
  });
}

VerificationReport check_balancing(const ExactCaustic& g) { return balancing_impl(g); }

VerificationReport check_balancing(const RealCaustic& g, double tol) {
  auto rep = balancing_impl(g);
  // Weights and directions are integral, so the residual is exact even here.
  (void)tol;
  return rep;
}

VerificationReport check_local_models(const ExactCaustic& g) { return local_models_impl(g); }

VerificationReport check_local_models(const RealCaustic& g, double tol) {
  auto rep = local_models_impl(g);
  CheckResult& r = rep.checks.front();
  const auto inc = incidence(g);
  for (const auto& v : g.vertices) {
    if (v.kind == VertexKind::Leaf || v.kind == VertexKind::Stub) continue;
    for (auto i : inc[static_cast<std::size_t>(v.id)].in) {
      const auto& e = g.edges[i];
      if (e.kind == EdgeKind::FinalSegment || e.from < 0) continue;
      const auto& a = g.vertices[static_cast<std::size_t>(e.from)];
      const double dx = a.pos.x + e.length * static_cast<double>(e.direction.x) - v.pos.x;
      const double dy = a.pos.y + e.length * static_cast<double>(e.direction.y) - v.pos.y;
      const double res = std::max(std::abs(dx), std::abs(dy));
      r.max_residual = std::max(r.max_residual, res);
      if (res > tol) fail(r, "edge " + std::to_string(i) + ": endpoint mismatch " + std::to_string(res), res);
    }
  }
  return rep;
}

VerificationReport check_noether(const RationalPolygon& poly, const ExactCaustic& g) {
  CheckResult r = named("noether");
  Rational lhs = lattice_perimeter(poly);
  Rational final_len = 0;
  for (const auto& e : g.edges) {
    lhs += Rational(e.weight) * e.length;
    if (e.kind == EdgeKind::FinalSegment) final_len = e.length;
  }
  const Rational rhs = 4 * final_len + 12 * g.final_time;
  if (lhs != rhs) {
    const Rational diff = lhs - rhs;
    fail(r, "perimeter + weighted length = " + str(lhs) + " but 4*final + 12*t = " + str(rhs),
         std::abs(diff.get_d()));
  }
  return single(std::move(r));
}

VerificationReport check_times_lengths(const RationalPolygon& poly, const ExactCaustic& g) {
  CheckResult r = named("times_lengths");
  for (const auto& v : g.vertices) {
    const Rational f = distance_series_eval(poly, v.pos);
    if (f != v.time) {
      fail(r, "vertex " + std::to_string(v.id) + ": time " + str(v.time) + " but distance series " + str(f),
           std::abs(Rational(f - v.time).get_d()));
    }
  }
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.from < 0 || e.to < 0) continue;
    const auto& a = g.vertices[static_cast<std::size_t>(e.from)];
    const auto& b = g.vertices[static_cast<std::size_t>(e.to)];
    const std::string at = "edge " + std::to_string(i);
    if (a.pos == b.pos) {
      fail(r, at + ": degenerate");
      continue;
    }
    const LatticeMeasure m = lattice_measure(b.pos - a.pos);
    if (m.direction != e.direction || m.length != e.length) {
      fail(r, at + ": stored " + str(e.length) + "*" + str(e.direction) + " but endpoints differ by " +
                  str(m.length) + "*" + str(m.direction));
    }
    if (e.kind == EdgeKind::FinalSegment) {
      if (a.time != g.final_time || b.time != g.final_time) fail(r, at + ": final segment ends not at the final time");
    } else if (b.time - a.time != e.length) {
      fail(r, at + ": length " + str(e.length) + " but time difference " + str(Rational(b.time - a.time)),
           std::abs(Rational(b.time - a.time - e.length).get_d()));
    }
  }
  return single(std::move(r));
}

VerificationReport check_minkowski_additivity(const RationalPolygon& p, const RationalPolygon& q) {
  CheckResult r = named("minkowski_additivity");
  using Key = std::tuple<int, std::int64_t, std::int64_t, std::int64_t, std::int64_t>;
  auto lengths = [](const ExactCaustic& g) {
    std::map<Key, Rational> out;
    for (const auto& e : g.edges) {
      out[{static_cast<int>(e.kind), e.left.a, e.left.b, e.right.a, e.right.b}] += e.length;
    }
    return out;
  };
  ExactResult rp, rq, rs;
  try {
    rp = run(p);
    rq = run(q);
    rs = run(minkowski_sum(p, q));
  } catch (const std::exception& ex) {
    r.status = CheckStatus::NotComparable;
    r.witnesses.push_back(std::string("engine failed: ") + ex.what());
    return single(std::move(r));
  }
  if (rp.caustic.final_kind != rq.caustic.final_kind) {
    r.status = CheckStatus::NotComparable;
    r.witnesses.push_back(std::string("final types differ: ") + to_string(rp.caustic.final_kind) + " vs " +
                          to_string(rq.caustic.final_kind));
    return single(std::move(r));
  }
  const auto lp = lengths(rp.caustic);
  const auto lq = lengths(rq.caustic);
  const auto ls = lengths(rs.caustic);
  auto keys = [](const std::map<Key, Rational>& m) {
    std::vector<Key> k;
    for (const auto& [key, _] : m) k.push_back(key);
    return k;
  };
  if (keys(lp) != keys(lq)) {
    r.status = CheckStatus::NotComparable;
    r.witnesses.push_back("caustics are not combinatorially identical");
    return single(std::move(r));
  }
  if (keys(ls) != keys(lp) || rs.caustic.final_kind != rp.caustic.final_kind) {
    fail(r, "caustic of the sum has a different combinatorial type");
    return single(std::move(r));
  }
  for (const auto& [key, len] : ls) {
    const Rational expect = lp.at(key) + lq.at(key);
    if (len != expect) {
      const auto& [kind, a1, b1, a2, b2] = key;
      (void)kind;
      std::ostringstream os;
      os << "edge between (" << a1 << "," << b1 << ") and (" << a2 << "," << b2 << "): " << to_string(len)
         << " != " << to_string(expect);
      fail(r, os.str(), std::abs(Rational(len - expect).get_d()));
    }
  }
  return single(std::move(r));
}

}  // namespace tc
