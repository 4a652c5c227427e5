// SPDX-License-Identifier: Apache-2.0
#include "tc/corpus.hpp"

#include <cstdlib>
#include <string>

namespace tc {

std::uint64_t corpus_seed(std::uint64_t fallback) {
  if (const char* s = std::getenv("TC_SEED")) {
    try {
      return std::stoull(s);
    } catch (const std::exception&) {
    }
  }
  return fallback;
}

RationalPolygon random_lattice_polygon(std::mt19937_64& rng, std::int64_t range, int points) {
  std::uniform_int_distribution<std::int64_t> coord(-range, range);
  for (;;) {
    std::vector<RationalPoint> pts;
    for (int i = 0; i < points; ++i) pts.push_back({Rational(coord(rng)), Rational(coord(rng))});
    auto hull = convex_hull(std::move(pts));
    if (hull.size() >= 3) return RationalPolygon::from_vertices(std::move(hull));
  }
}

std::vector<RationalPolygon> lattice_polygon_corpus(std::size_t count, std::uint64_t seed, std::int64_t range) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> npts(3, 12);
  std::vector<RationalPolygon> out;
  while (out.size() < count) out.push_back(random_lattice_polygon(rng, range, npts(rng)));
  return out;
}

DualCone random_cone(std::mt19937_64& rng, std::int64_t range) {
  std::uniform_int_distribution<std::int64_t> coord(-range, range);
  for (;;) {
    const Covector u{coord(rng), coord(rng)};
    const Covector w{coord(rng), coord(rng)};
    if (!is_primitive(u) || !is_primitive(w) || det2(u, w) == 0) continue;
    return DualCone(u, w);
  }
}

}  // namespace tc
