// SPDX-License-Identifier: Apache-2.0
#include "tc/lattice.hpp"

#include <algorithm>
#include <string>

namespace tc {

namespace {

// Returns (s, t) with s*a + t*b = gcd(a, b) >= 0.
std::pair<std::int64_t, std::int64_t> bezout(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
    std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
  }
  if (old_r < 0) return {-old_s, -old_t};
  return {old_s, old_t};
}

std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  // den > 0
  std::int64_t q = num / den;
  if (num % den != 0 && num > 0) ++q;
  return q;
}

std::vector<Covector> chain_positive(Covector a, Covector b) {
  std::vector<Covector> chain{a};
  std::int64_t d = det2(a, b);
  while (d > 0) {
    const auto [s, t] = bezout(a.a, a.b);
    const Covector p{-t, s};  // det(a, p) = 1
    const std::int64_t alpha = det2(b, p);
    const std::int64_t k = ceil_div(alpha, d);
    const Covector u = k * a + p;
    d = k * d - alpha;
    a = u;
    chain.push_back(a);
  }
  if (chain.back() != b) throw GeometryError("hull descent did not terminate at the cone generator");
  return chain;
}

}  // namespace

PrimitiveDecomposition primitive(std::int64_t x, std::int64_t y) {
  const std::int64_t g = gcd_abs(x, y);
  if (g == 0) throw GeometryError("primitive() of the zero vector");
  return {{x / g, y / g}, g};
}

Covector primitive_covector(Covector l) {
  const auto p = primitive(l.a, l.b);
  return {p.primitive.x, p.primitive.y};
}

LatticeVector unit_pairing_direction(Covector u, Covector w) {
  const std::int64_t d = det2(u, w);
  if (d == 0) throw GeometryError("unit_pairing_direction: parallel covectors");
  const LatticeVector m = momentum_between(u, w);
  if (m.x % d != 0 || m.y % d != 0) {
    throw GeometryError("unit_pairing_direction: no integral solution (corner is not of A_n type)");
  }
  return {m.x / d, m.y / d};
}

DualCone::DualCone(Covector start, Covector end) : start_(start), end_(end) {
  if (!is_primitive(start) || !is_primitive(end)) throw GeometryError("DualCone generators must be primitive");
  if (det2(start, end) == 0) throw GeometryError("degenerate cone: generators are parallel");
}

std::vector<Covector> hull_chain_in_cone(const DualCone& cone) {
  if (cone.det() > 0) return chain_positive(cone.start(), cone.end());
  auto chain = chain_positive(cone.end(), cone.start());
  std::reverse(chain.begin(), chain.end());
  return chain;
}

std::vector<Covector> hull_boundary_in_cone(const DualCone& cone) {
  const auto chain = hull_chain_in_cone(cone);
  std::vector<Covector> out{chain.front()};
  for (std::size_t i = 1; i + 1 < chain.size(); ++i) {
    const Covector in = chain[i] - chain[i - 1];
    const Covector next = chain[i + 1] - chain[i];
    if (det2(in, next) != 0) out.push_back(chain[i]);
  }
  out.push_back(chain.back());
  return out;
}

std::vector<CausticRay> cone_rule(const DualCone& cone) {
  const auto hull = hull_boundary_in_cone(cone);
  std::vector<CausticRay> rays;
  rays.reserve(hull.size() - 1);
  for (std::size_t i = 0; i + 1 < hull.size(); ++i) {
    const Covector u = hull[i];
    const Covector w = hull[i + 1];
    const Covector step = w - u;
    rays.push_back({unit_pairing_direction(u, w), gcd_abs(step.a, step.b), u, w});
  }
  return rays;
}

std::ostream& operator<<(std::ostream& os, LatticeVector v) { return os << '(' << v.x << ',' << v.y << ')'; }
std::ostream& operator<<(std::ostream& os, Covector l) { return os << '<' << l.a << ',' << l.b << '>'; }

}  // namespace tc
