// SPDX-License-Identifier: Apache-2.0
#include "tc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

namespace tc {

namespace {

template <class Num>
struct Policy;

template <>
struct Policy<Rational> {
  static bool same(const Rational& a, const Rational& b) { return a == b; }
  static bool negative(const Rational& a) { return a < 0; }
  static bool same_point(const RationalPoint& p, const RationalPoint& q) { return p == q; }
};

template <>
struct Policy<double> {
  static constexpr double kTol = 1e-9;
  static bool same(double a, double b) {
    return std::abs(a - b) <= kTol * std::max({1.0, std::abs(a), std::abs(b)});
  }
  static bool negative(double a) { return a < -kTol; }
  static bool same_point(const RealPoint& p, const RealPoint& q) { return same(p.x, q.x) && same(p.y, q.y); }
};

template <class Num>
Num from_int(std::int64_t v) {
  return Num(static_cast<long>(v));
}

template <class Num>
Point2<Num> intersect_at(const Monomial<Num>& m1, const Monomial<Num>& m2, const Num& t) {
  const std::int64_t d = det2(m1.normal, m2.normal);
  if (d == 0) throw EngineError("intersecting parallel support lines");
  const Num r1 = t - m1.c;
  const Num r2 = t - m2.c;
  const Num dd = from_int<Num>(d);
  const Num x = (r1 * from_int<Num>(m2.normal.b) - r2 * from_int<Num>(m1.normal.b)) / dd;
  const Num y = (from_int<Num>(m1.normal.a) * r2 - from_int<Num>(m2.normal.a) * r1) / dd;
  return {x, y};
}

template <class Num>
Point2<Num> centroid(const std::vector<Point2<Num>>& pts) {
  if constexpr (std::is_same_v<Num, double>) {
    RealPoint c{0.0, 0.0};
    for (const auto& p : pts) {
      c.x += p.x;
      c.y += p.y;
    }
    return {c.x / static_cast<double>(pts.size()), c.y / static_cast<double>(pts.size())};
  } else {
    return pts.front();
  }
}

template <class Num>
Num lattice_length_of(const Point2<Num>& d, LatticeVector dir) {
  if constexpr (std::is_same_v<Num, double>) {
    return std::hypot(d.x, d.y) / std::hypot(static_cast<double>(dir.x), static_cast<double>(dir.y));
  } else {
    return dir.x != 0 ? Rational(d.x / from_int<Rational>(dir.x)) : Rational(d.y / from_int<Rational>(dir.y));
  }
}

std::string describe(const std::vector<LatticeVector>& dirs, const std::vector<std::int64_t>& masses) {
  std::ostringstream os;
  for (std::size_t i = 0; i < dirs.size(); ++i) os << (i ? " " : "") << masses[i] << "*" << dirs[i];
  return os.str();
}

}  // namespace

template <class Num>
Particle<Num> make_particle(int id, const Monomial<Num>& left, const Monomial<Num>& right, const Point2<Num>& at,
                            const Num& time, int vertex) {
  const Covector step = right.normal - left.normal;
  const std::int64_t mass = gcd_abs(step.a, step.b);
  const std::int64_t d = det2(left.normal, right.normal);
  if (mass == 0 || d != mass) {
    std::ostringstream os;
    os << "front vertex between " << left.normal << " and " << right.normal << " is not of A_n type";
    throw EngineError(os.str());
  }
  Particle<Num> p;
  p.id = id;
  p.birth_pos = at;
  p.birth_time = time;
  p.direction = unit_pairing_direction(left.normal, right.normal);
  p.mass = mass;
  p.left = left;
  p.right = right;
  p.birth_vertex = vertex;
  return p;
}

template <class Num>
std::optional<Num> edge_collapse_time(const Particle<Num>& left, const Particle<Num>& right,
                                      const Monomial<Num>& shared) {
  if (left.right.normal != shared.normal || right.left.normal != shared.normal) {
    throw EngineError("edge_collapse_time: particles are not adjacent across the given edge");
  }
  const Point2<Num> tangent{from_int<Num>(shared.normal.b), from_int<Num>(-shared.normal.a)};
  const Point2<Num> l0 = left.position(Num(0));
  const Point2<Num> r0 = right.position(Num(0));
  const Point2<Num> d0 = r0 - l0;
  const Point2<Num> dv = lift<Num>(right.direction - left.direction);
  const Num s0 = Num(tangent.x * d0.x + tangent.y * d0.y);
  const Num ds = Num(tangent.x * dv.x + tangent.y * dv.y);
  if (!Policy<Num>::negative(ds) || ds == 0) return std::nullopt;
  return Num(-s0 / ds);
}

template <class Num>
EngineInput<Num> make_engine_input(const std::vector<Monomial<Num>>& edges,
                                   const std::vector<std::vector<Monomial<Num>>>& extras) {
  EngineInput<Num> in;
  const std::size_t n = edges.size();
  for (std::size_t k = 0; k < n; ++k) {
    const int corner = static_cast<int>(k);
    in.corners.push_back(intersect_at(edges[k], edges[(k + 1) % n], Num(0)));
    in.monomials.push_back(edges[k]);
    in.corner_of_pair.push_back(corner);
    if (k < extras.size()) {
      for (const auto& m : extras[k]) {
        in.monomials.push_back(m);
        in.corner_of_pair.push_back(corner);
      }
    }
  }
  return in;
}

template <class Num>
std::vector<Point2<Num>> EngineResult<Num>::front_vertices_at(const Num& t) const {
  std::vector<Point2<Num>> out;
  for (const auto& p : particles) {
    if (p.birth_time <= t && t < death_time[static_cast<std::size_t>(p.id)]) {
      const auto pos = p.position(t);
      const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& q) { return Policy<Num>::same_point(q, pos); });
      if (!seen) out.push_back(pos);
    }
  }
  return out;
}

template <class Num>
EngineResult<Num> run_engine(const EngineInput<Num>& input) {
  using P = Policy<Num>;
  EngineResult<Num> res;
  auto& g = res.caustic;

  std::vector<Monomial<Num>> monos = input.monomials;
  const std::size_t n0 = monos.size();
  if (n0 < 3) throw EngineError("front needs at least three active monomials");

  std::vector<int> corner_vertex(input.corners.size(), -1);
  for (std::size_t k = 0; k < input.corners.size(); ++k) {
    corner_vertex[k] = g.add_vertex(input.corners[k], Num(0), VertexKind::Leaf);
    g.leaf_order.push_back(corner_vertex[k]);
  }

  std::vector<Particle<Num>> parts;
  auto spawn = [&](const Monomial<Num>& l, const Monomial<Num>& r, const Point2<Num>& at, const Num& t, int v) {
    Particle<Num> p = make_particle(static_cast<int>(res.particles.size()), l, r, at, t, v);
    res.particles.push_back(p);
    res.death_time.push_back(Num(-1));
    return p;
  };
  for (std::size_t i = 0; i < n0; ++i) {
    const int corner = input.corner_of_pair[i];
    parts.push_back(spawn(monos[i], monos[(i + 1) % n0], input.corners[static_cast<std::size_t>(corner)], Num(0),
                          corner_vertex[static_cast<std::size_t>(corner)]));
  }

  auto kill = [&](const Particle<Num>& p, int vertex, const Num& t, EdgeKind kind = EdgeKind::Trajectory) {
    res.death_time[static_cast<std::size_t>(p.id)] = t;
    CausticEdge<Num> e;
    e.from = p.birth_vertex;
    e.to = vertex;
    e.direction = p.direction;
    e.weight = p.mass;
    e.length = t - p.birth_time;
    e.left = p.left.normal;
    e.right = p.right.normal;
    e.kind = kind;
    g.edges.push_back(e);
  };

  for (;;) {
    const std::size_t n = monos.size();
    std::vector<std::optional<Num>> when(n);
    std::optional<Num> tmin;
    for (std::size_t i = 0; i < n; ++i) {
      when[i] = edge_collapse_time(parts[(i + n - 1) % n], parts[i], monos[i]);
      if (when[i] && (!tmin || *when[i] < *tmin)) tmin = when[i];
    }
    if (!tmin) throw EngineError("wave front never collapses; domain is not compact");
    const Num t = *tmin;
    std::vector<bool> collapsing(n, false);
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (when[i] && P::same(*when[i], t)) {
        collapsing[i] = true;
        ++count;
      }
    }

    if (count == n) {
      std::vector<Point2<Num>> pts;
      LatticeVector total{0, 0};
      EventRecord<Num> ev;
      for (const auto& p : parts) {
        pts.push_back(p.position(t));
        total = total + p.momentum();
        ev.participants.push_back(p.id);
        ev.in_directions.push_back(p.direction);
        ev.in_masses.push_back(p.mass);
      }
      const Point2<Num> at = centroid(pts);
      for (const auto& q : pts) {
        if (!P::same_point(q, at)) throw EngineError("final collision participants do not coincide");
      }
      if (total != LatticeVector{0, 0}) throw EngineError("final point with non-zero total momentum");
      const int v = g.add_vertex(at, t, VertexKind::FinalPoint);
      for (const auto& p : parts) kill(p, v, t);
      ev.time = t;
      ev.point = at;
      ev.outcome = EventOutcome::Annihilation;
      ev.vertex = v;
      res.events.push_back(ev);
      g.final_kind = FinalKind::Point;
      g.final_vertices = {v};
      break;
    }

    // Maximal runs of consecutive collapsing edges, starting after a survivor.
    std::size_t start = 0;
    while (collapsing[start]) ++start;
    struct Run {
      std::size_t first;  // first collapsing edge index
      std::size_t len;
    };
    std::vector<Run> runs;
    for (std::size_t k = 1; k <= n; ++k) {
      const std::size_t i = (start + k) % n;
      if (!collapsing[i]) continue;
      if (collapsing[(i + n - 1) % n] && !runs.empty() && (runs.back().first + runs.back().len) % n == i) {
        ++runs.back().len;
      } else {
        runs.push_back({i, 1});
      }
    }

    const std::size_t survivors = n - count;
    bool final_segment = false;
    if (survivors == 2) {
      std::vector<Covector> rest;
      for (std::size_t i = 0; i < n; ++i) {
        if (!collapsing[i]) rest.push_back(monos[i].normal);
      }
      final_segment = rest[0] == -rest[1];
    }

    struct Merge {
      std::vector<Particle<Num>> in;
      Monomial<Num> left, right;
      Point2<Num> at;
    };
    std::vector<Merge> merges;
    for (const auto& r : runs) {
      Merge m;
      for (std::size_t k = 0; k <= r.len; ++k) m.in.push_back(parts[(r.first + n - 1 + k) % n]);
      m.left = monos[(r.first + n - 1) % n];
      m.right = monos[(r.first + r.len) % n];
      std::vector<Point2<Num>> pts;
      for (const auto& p : m.in) pts.push_back(p.position(t));
      m.at = centroid(pts);
      for (const auto& q : pts) {
        if (!P::same_point(q, m.at)) throw EngineError("collision participants do not coincide");
      }
      merges.push_back(std::move(m));
    }

    auto record = [&](const Merge& m, EventOutcome outcome, LatticeVector out_dir, std::int64_t out_mass, int v) {
      EventRecord<Num> ev;
      ev.time = t;
      ev.point = m.at;
      for (const auto& p : m.in) {
        ev.participants.push_back(p.id);
        ev.in_directions.push_back(p.direction);
        ev.in_masses.push_back(p.mass);
      }
      ev.outcome = outcome;
      ev.out_direction = out_dir;
      ev.out_mass = out_mass;
      ev.vertex = v;
      res.events.push_back(ev);
    };

    if (final_segment) {
      if (merges.size() != 2) throw EngineError("final segment must have exactly two ends");
      std::vector<int> ends;
      std::vector<LatticeVector> moms;
      for (const auto& m : merges) {
        if (m.left.normal != -m.right.normal) throw EngineError("final segment end is not flanked by antipodal normals");
        const LatticeVector mom = momentum_between(m.left.normal, m.right.normal);
        const auto pd = primitive(mom);
        const int v = g.add_vertex(m.at, t, VertexKind::FinalSegmentEnd);
        for (const auto& p : m.in) kill(p, v, t);
        record(m, EventOutcome::FinalSegment, pd.primitive, pd.multiplicity, v);
        ends.push_back(v);
        moms.push_back(mom);
      }
      const auto& a = g.vertices[static_cast<std::size_t>(ends[0])];
      const auto& b = g.vertices[static_cast<std::size_t>(ends[1])];
      if (P::same_point(a.pos, b.pos)) throw EngineError("final segment of zero length");
      CausticEdge<Num> e;
      e.from = ends[0];
      e.to = ends[1];
      e.direction = primitive(moms[0]).primitive;
      e.weight = 2;
      e.length = lattice_length_of(b.pos - a.pos, e.direction);
      e.left = merges[0].left.normal;
      e.right = merges[0].right.normal;
      e.kind = EdgeKind::FinalSegment;
      g.edges.push_back(e);
      g.final_kind = FinalKind::Segment;
      g.final_vertices = ends;
      break;
    }

    std::map<std::size_t, Particle<Num>> born;  // keyed by first collapsed edge
    for (std::size_t k = 0; k < merges.size(); ++k) {
      const Merge& m = merges[k];
      if (m.in.size() != 2) {
        throw EngineError("non-final collision involves " + std::to_string(m.in.size()) + " particles");
      }
      if (m.left.normal == -m.right.normal) throw EngineError("antipodal normals at a non-final collision");
      const int v = g.add_vertex(m.at, t, VertexKind::Branch);
      Particle<Num> np = spawn(m.left, m.right, m.at, t, v);
      const int heavy = static_cast<int>(m.in[0].mass > 1) + static_cast<int>(m.in[1].mass > 1);
      if (np.mass != 1 || heavy > 1) {
        throw EngineError("non-final collision violates the A_n local model: " +
                          describe({m.in[0].direction, m.in[1].direction}, {m.in[0].mass, m.in[1].mass}));
      }
      for (const auto& p : m.in) kill(p, v, t);
      record(m, EventOutcome::Particle, np.direction, np.mass, v);
      born.emplace(runs[k].first, np);
    }

    std::vector<Monomial<Num>> next_monos;
    std::vector<Particle<Num>> next_parts;
    std::vector<std::size_t> alive;
    for (std::size_t i = 0; i < n; ++i) {
      if (!collapsing[i]) alive.push_back(i);
    }
    for (std::size_t k = 0; k < alive.size(); ++k) {
      const std::size_t i = alive[k];
      const std::size_t j = alive[(k + 1) % alive.size()];
      next_monos.push_back(monos[i]);
      if ((i + 1) % n == j) {
        next_parts.push_back(parts[i]);
      } else {
        next_parts.push_back(born.at((i + 1) % n));
      }
    }
    monos = std::move(next_monos);
    parts = std::move(next_parts);
  }

  g.final_time = g.vertices[static_cast<std::size_t>(g.final_vertices.front())].time;
  res.final_time = g.final_time;
  return res;
}

EngineInput<Rational> engine_input(const RationalPolygon& poly) {
  const std::size_t n = poly.size();
  std::vector<RationalMonomial> edges;
  std::vector<std::vector<RationalMonomial>> extras;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t prev = (k + n - 1) % n;
    edges.push_back(poly.edge_monomial(prev));
    std::vector<RationalMonomial> ex;
    const auto hull = hull_boundary_in_cone(DualCone(poly.edge_normal(prev), poly.edge_normal(k)));
    for (std::size_t h = 1; h + 1 < hull.size(); ++h) {
      ex.push_back({hull[h], Rational(-evaluate(hull[h], poly.vertex(k)))});
    }
    extras.push_back(std::move(ex));
  }
  // edges[k] ends at vertex k, so corner k sits between edges[k] and edges[k+1].
  auto in = make_engine_input(edges, extras);
  for (std::size_t k = 0; k < n; ++k) in.corners[k] = poly.vertex(k);
  return in;
}

std::vector<Particle<Rational>> seed_particles(const RationalPolygon& poly) {
  const auto in = engine_input(poly);
  std::vector<Particle<Rational>> out;
  const std::size_t n = in.monomials.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto corner = static_cast<std::size_t>(in.corner_of_pair[i]);
    out.push_back(make_particle(static_cast<int>(i), in.monomials[i], in.monomials[(i + 1) % n], in.corners[corner],
                                Rational(0), static_cast<int>(corner)));
  }
  return out;
}

ExactResult run(const RationalPolygon& poly) { return run_engine(engine_input(poly)); }

template struct EngineResult<Rational>;
template struct EngineResult<double>;
template Particle<Rational> make_particle(int, const Monomial<Rational>&, const Monomial<Rational>&,
                                          const RationalPoint&, const Rational&, int);
template Particle<double> make_particle(int, const Monomial<double>&, const Monomial<double>&, const RealPoint&,
                                        const double&, int);
template std::optional<Rational> edge_collapse_time(const Particle<Rational>&, const Particle<Rational>&,
                                                    const Monomial<Rational>&);
template std::optional<double> edge_collapse_time(const Particle<double>&, const Particle<double>&,
                                                  const Monomial<double>&);
template EngineResult<Rational> run_engine(const EngineInput<Rational>&);
template EngineResult<double> run_engine(const EngineInput<double>&);
template EngineInput<Rational> make_engine_input(const std::vector<Monomial<Rational>>&,
                                                 const std::vector<std::vector<Monomial<Rational>>>&);
template EngineInput<double> make_engine_input(const std::vector<Monomial<double>>&,
                                               const std::vector<std::vector<Monomial<double>>>&);

}  // namespace tc
