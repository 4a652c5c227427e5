// SPDX-License-Identifier: Apache-2.0
#include "tc/domain.hpp"

#include <algorithm>
#include <limits>
#include <optional>

namespace tc {

namespace {

Integer lcm_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

Integer gcd_of(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

std::vector<RationalPoint> clip(const std::vector<RationalPoint>& poly, const RationalMonomial& m, const Rational& t) {
  std::vector<RationalPoint> out;
  const std::size_t n = poly.size();
  if (n == 0) return out;
  if (n == 1) {
    if (m.value(poly[0]) >= t) out.push_back(poly[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoint& p = poly[i];
    const RationalPoint& q = poly[(i + 1) % n];
    const Rational fp = m.value(p) - t;
    const Rational fq = m.value(q) - t;
    if (fp >= 0) out.push_back(p);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      const Rational s = fp / (fp - fq);
      out.push_back(p + s * (q - p));
    }
  }
  return out;
}

// Upper half-plane first, then counter-clockwise.
bool angle_less(const RationalPoint& u, const RationalPoint& v) {
  const bool hu = u.y > 0 || (u.y == 0 && u.x > 0);
  const bool hv = v.y > 0 || (v.y == 0 && v.x > 0);
  if (hu != hv) return hu;
  return cross(u, v) > 0;
}

std::vector<RationalPoint> edges_from_lowest(const RationalPolygon& p, RationalPoint& start) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  const std::size_t s = static_cast<std::size_t>(std::min_element(v.begin(), v.end()) - v.begin());
  start = v[s];
  std::vector<RationalPoint> e;
  e.reserve(n);
  for (std::size_t k = 0; k < n; ++k) e.push_back(v[(s + k + 1) % n] - v[(s + k) % n]);
  return e;
}

}  // namespace

LatticeMeasure lattice_measure(const RationalPoint& v) {
  const Integer scale = lcm_of(v.x.get_den(), v.y.get_den());
  const Integer ix = v.x.get_num() * (scale / v.x.get_den());
  const Integer iy = v.y.get_num() * (scale / v.y.get_den());
  const Integer g = gcd_of(ix, iy);
  if (g == 0) throw GeometryError("lattice_measure of the zero vector");
  Rational len(g, scale);
  len.canonicalize();
  return {{to_int64(Integer(ix / g)), to_int64(Integer(iy / g))}, len};
}

RationalPolygon RationalPolygon::from_vertices(std::vector<RationalPoint> pts) {
  const std::size_t n = pts.size();
  if (n < 3) throw GeometryError("polygon needs at least 3 vertices");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (pts[i] == pts[j]) throw GeometryError("duplicate polygon vertex");
    }
  }
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational o = orient(pts[i], pts[(i + 1) % n], pts[(i + 2) % n]);
    if (o == 0) throw GeometryError("collinear polygon vertices");
    const int s = o > 0 ? 1 : -1;
    if (sign == 0) sign = s;
    if (s != sign) throw GeometryError("polygon is not convex");
  }
  if (sign < 0) std::reverse(pts.begin() + 1, pts.end());
  // Locally convex but possibly winding more than once.
  if (convex_hull(pts).size() != n) throw GeometryError("polygon is not convex");
  Rational turning_check = 0;
  for (std::size_t i = 0; i < n; ++i) turning_check += cross(pts[i], pts[(i + 1) % n]);
  if (turning_check <= 0) throw GeometryError("polygon is not convex");
  std::size_t crossings = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const RationalPoint e = pts[(i + 1) % n] - pts[i];
    const RationalPoint f = pts[(i + 2) % n] - pts[(i + 1) % n];
    const bool he = e.y > 0 || (e.y == 0 && e.x > 0);
    const bool hf = f.y > 0 || (f.y == 0 && f.x > 0);
    if (he && !hf) ++crossings;
  }
  if (crossings != 1) throw GeometryError("polygon is not convex (winds more than once)");
  return RationalPolygon(std::move(pts));
}

Covector RationalPolygon::edge_normal(std::size_t i) const {
  const RationalPoint d = vertex(i + 1) - vertex(i);
  const LatticeMeasure m = lattice_measure(d);
  return {-m.direction.y, m.direction.x};
}

RationalMonomial RationalPolygon::edge_monomial(std::size_t i) const {
  const Covector l = edge_normal(i);
  return {l, Rational(-evaluate(l, vertex(i)))};
}

bool RationalPolygon::is_lattice_polygon() const {
  return std::all_of(vertices_.begin(), vertices_.end(),
                     [](const RationalPoint& p) { return p.x.get_den() == 1 && p.y.get_den() == 1; });
}

bool operator==(const RationalPolygon& p, const RationalPolygon& q) {
  if (p.size() != q.size()) return false;
  const std::size_t n = p.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool ok = true;
    for (std::size_t k = 0; k < n && ok; ++k) ok = p.vertices_[k] == q.vertices_[(s + k) % n];
    if (ok) return true;
  }
  return false;
}

bool same_state(const WaveFrontState& s, const WaveFrontState& t) {
  if (s.index() != t.index()) return false;
  if (const auto* p = std::get_if<RationalPolygon>(&s)) return *p == std::get<RationalPolygon>(t);
  if (const auto* a = std::get_if<FrontSegment>(&s)) {
    const auto& b = std::get<FrontSegment>(t);
    return (a->a == b.a && a->b == b.b) || (a->a == b.b && a->b == b.a);
  }
  if (const auto* a = std::get_if<FrontPoint>(&s)) return a->p == std::get<FrontPoint>(t).p;
  return true;
}

std::vector<RationalMonomial> monomial_set(const RationalPolygon& poly) {
  std::vector<RationalMonomial> out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t prev = (i + n - 1) % n;
    out.push_back(poly.edge_monomial(prev));
    const auto hull = hull_boundary_in_cone(DualCone(poly.edge_normal(prev), poly.edge_normal(i)));
    for (std::size_t k = 1; k + 1 < hull.size(); ++k) {
      out.push_back({hull[k], Rational(-evaluate(hull[k], poly.vertex(i)))});
    }
  }
  return out;
}

Rational support_constant(const RationalPolygon& poly, Covector normal) {
  Rational best = evaluate(normal, poly.vertex(0));
  for (const auto& v : poly.vertices()) {
    const Rational val = evaluate(normal, v);
    if (val < best) best = val;
  }
  return -best;
}

WaveFrontState state_from_points(std::vector<RationalPoint> pts) {
  if (pts.empty()) return FrontEmpty{};
  auto hull = convex_hull(std::move(pts));
  if (hull.size() == 1) return FrontPoint{hull[0]};
  if (hull.size() == 2) return FrontSegment{hull[0], hull[1]};
  return RationalPolygon::from_vertices(std::move(hull));
}

WaveFrontState propagate(const RationalPolygon& poly, const Rational& t) {
  if (t <= 0) return poly;
  std::vector<RationalPoint> cur = poly.vertices();
  for (const auto& m : monomial_set(poly)) {
    cur = clip(cur, m, t);
    if (cur.empty()) return FrontEmpty{};
  }
  return state_from_points(std::move(cur));
}

WaveFrontState propagate(const WaveFrontState& state, const Rational& t) {
  if (const auto* p = std::get_if<RationalPolygon>(&state)) return propagate(*p, t);
  if (t <= 0) return state;
  return FrontEmpty{};
}

Rational distance_series_eval(const RationalPolygon& poly, const RationalPoint& p) {
  std::optional<Rational> best;
  for (const auto& m : monomial_set(poly)) {
    const Rational v = m.value(p);
    if (!best || v < *best) best = v;
  }
  return *best;
}

RationalPolygon minkowski_sum(const RationalPolygon& p, const RationalPolygon& q) {
  RationalPoint sp, sq;
  auto ep = edges_from_lowest(p, sp);
  auto eq = edges_from_lowest(q, sq);
  std::vector<RationalPoint> merged;
  std::size_t i = 0, j = 0;
  while (i < ep.size() || j < eq.size()) {
    if (j == eq.size() || (i < ep.size() && angle_less(ep[i], eq[j]))) {
      merged.push_back(ep[i++]);
    } else if (i == ep.size() || angle_less(eq[j], ep[i])) {
      merged.push_back(eq[j++]);
    } else {
      merged.push_back(ep[i++] + eq[j++]);
    }
  }
  std::vector<RationalPoint> verts;
  RationalPoint cur = sp + sq;
  for (std::size_t k = 0; k + 1 < merged.size(); ++k) {
    verts.push_back(cur);
    cur = cur + merged[k];
  }
  verts.push_back(cur);
  return RationalPolygon::from_vertices(std::move(verts));
}

RationalPolygon translate(const RationalPolygon& p, const RationalPoint& v) {
  std::vector<RationalPoint> pts;
  for (const auto& x : p.vertices()) pts.push_back(x + v);
  return RationalPolygon::from_vertices(std::move(pts));
}

Rational lattice_perimeter(const RationalPolygon& poly) {
  Rational sum = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) sum += lattice_measure(poly.vertex(i + 1) - poly.vertex(i)).length;
  return sum;
}

bool contains(const RationalPolygon& poly, const RationalPoint& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly.edge_monomial(i).value(p) < 0) return false;
  }
  return true;
}

bool contains_strictly(const RationalPolygon& poly, const RationalPoint& p) {
  for (std::size_t i = 0; i < poly.size(); ++i) {
    if (poly.edge_monomial(i).value(p) <= 0) return false;
  }
  return true;
}

}  // namespace tc
