// SPDX-License-Identifier: Apache-2.0
//
// Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fail.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "support.hpp"
#include "tc/approx.hpp"
#include "tc/caustic.hpp"
#include "tc/corpus.hpp"
#include "tc/engine.hpp"
#include "tc/reconstruct.hpp"
#include "tc/smooth.hpp"

using namespace tc;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

class Recorder {
 public:
  void fail(const std::string& why) {
    if (ok_) first_ = why;
    ok_ = false;
    ++failures_;
  }
  void expect(bool cond, const std::string& why) {
    if (!cond) fail(why);
  }
  Outcome done(std::string detail) const {
    if (!ok_) detail = std::to_string(failures_) + " violation(s), first: " + first_;
    return {ok_, detail};
  }

 private:
  bool ok_ = true;
  int failures_ = 0;
  std::string first_;
};

std::string str(const Rational& r) { return to_string(r); }

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::vector<RationalPolygon> fixtures() {
  return {test::square2(), test::rectangle42(), test::triangle32(), test::triangle21()};
}

std::vector<RationalPolygon> corpus50() { return lattice_polygon_corpus(50, corpus_seed(), 20); }

Outcome disc_identity() {
  Recorder rec;
  const double target = 4 - M_PI;
  // Tail calibration: the gap decays like N^-3 (5.4e-4 at 10, 5.2e-7 at 100).
  const double tolerance = 1e-6;
  double prev = 0;
  for (std::int64_t n : {1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377, 610, 1000}) {
    const double s = disc_area_series(n).partial_sum;
    rec.expect(s > prev, "not increasing at bound " + std::to_string(n));
    rec.expect(s < target, "exceeds 4-pi at bound " + std::to_string(n));
    prev = s;
  }
  rec.expect(target - prev <= tolerance, "gap at 1000 is " + fmt("%.3g", target - prev));
  return rec.done("gap at bound 1000 = " + fmt("%.3g", target - prev) + " <= " + fmt("%.0e", tolerance));
}

Outcome noether() {
  Recorder rec;
  auto polys = fixtures();
  for (const auto& p : corpus50()) polys.push_back(p);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto r = check_noether(polys[i], run(polys[i]).caustic);
    rec.expect(r.passed(), "polygon " + std::to_string(i));
  }
  return rec.done(std::to_string(polys.size()) + " polygons, exact");
}

Outcome trivalency() {
  Recorder rec;
  auto polys = fixtures();
  for (const auto& p : corpus50()) polys.push_back(p);
  std::size_t events = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto r = run(polys[i]);
    for (const auto& e : r.events) {
      if (e.outcome != EventOutcome::Particle) continue;
      ++events;
      rec.expect(e.participants.size() == 2, "polygon " + std::to_string(i) + ": event with " +
                                                 std::to_string(e.participants.size()) + " participants");
      rec.expect(e.out_mass == 1, "polygon " + std::to_string(i) + ": branch emits mass " + std::to_string(e.out_mass));
      int heavy = 0;
      for (auto m : e.in_masses) heavy += m > 1;
      rec.expect(heavy <= 1, "polygon " + std::to_string(i) + ": two heavy particles collide");
    }
    rec.expect(check_local_models(r.caustic).passed(), "polygon " + std::to_string(i) + ": local models");
  }
  return rec.done(std::to_string(events) + " branch events");
}

Outcome huygens() {
  Recorder rec;
  std::mt19937_64 rng(corpus_seed() + 101);
  std::uniform_int_distribution<long> num(0, 24), den(1, 8);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_lattice_polygon(rng, 20, 8);
    const Rational t = make_rational(num(rng), den(rng)), s = make_rational(num(rng), den(rng));
    rec.expect(same_state(propagate(propagate(p, t), s), propagate(p, Rational(t + s))),
               "case " + std::to_string(i) + " t=" + str(t) + " s=" + str(s));
  }
  return rec.done("100 cases");
}

Outcome coherence() {
  Recorder rec;
  auto polys = fixtures();
  for (const auto& p : corpus50()) polys.push_back(p);
  std::size_t vertices = 0;
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto g = run(polys[i]).caustic;
    vertices += g.vertices.size();
    rec.expect(check_times_lengths(polys[i], g).passed(), "polygon " + std::to_string(i));
  }
  return rec.done(std::to_string(vertices) + " vertices, exact");
}

Outcome fixed_fixtures() {
  Recorder rec;
  auto trajectory_weights = [](const ExactCaustic& g) {
    std::multiset<std::int64_t> w;
    for (const auto& e : g.edges) {
      if (e.kind == EdgeKind::Trajectory) w.insert(e.weight);
    }
    return w;
  };
  auto g = run(test::triangle32()).caustic;
  rec.expect(trajectory_weights(g) == std::multiset<std::int64_t>{1, 2, 3}, "triangle (3,2) weights");
  rec.expect(g.final_kind == FinalKind::Point && g.vertices[g.final_vertices[0]].pos == test::pt(1, 1),
             "triangle (3,2) final point");
  rec.expect(g.final_time == 1, "triangle (3,2) final time");

  g = run(test::triangle21()).caustic;
  rec.expect(g.final_kind == FinalKind::Point &&
                 g.vertices[g.final_vertices[0]].pos == test::pt(Rational(1, 2), Rational(1, 2)),
             "triangle (2,1) final point");
  rec.expect(g.final_time == Rational(1, 2), "triangle (2,1) final time");

  g = run(test::rectangle42()).caustic;
  const auto* f = g.final_segment();
  rec.expect(g.final_kind == FinalKind::Segment && f && f->weight == 2, "rectangle final segment");
  if (f) {
    std::set<RationalPoint> ends{g.vertices[f->from].pos, g.vertices[f->to].pos};
    rec.expect(ends == std::set<RationalPoint>{test::pt(1, 1), test::pt(3, 1)}, "rectangle segment ends");
  }
  return rec.done("exact match on three fixtures");
}

Outcome cone_rule_oracle() {
  Recorder rec;
  std::mt19937_64 rng(corpus_seed() + 107);
  for (int i = 0; i < 500; ++i) {
    const DualCone cone = random_cone(rng, 50);
    const auto hull = hull_boundary_in_cone(cone);
    const auto oracle = test::brute_force_hull(cone, 50);
    std::ostringstream os;
    os << "cone " << cone.start() << " " << cone.end();
    rec.expect(hull == oracle, os.str());
    // the rays are the duals of the oracle's edges
    const auto rays = cone_rule(cone);
    rec.expect(rays.size() + 1 == oracle.size(), os.str() + ": ray count");
    for (std::size_t k = 0; k < rays.size() && k + 1 < oracle.size(); ++k) {
      // dual direction: orthogonal to the edge, pairing positively with its ends
      auto d = primitive(momentum_between(oracle[k], oracle[k + 1]));
      if (pairing(oracle[k], d.primitive) < 0) d.primitive = -d.primitive;
      rec.expect(pairing(oracle[k], d.primitive) == 1 && pairing(oracle[k + 1], d.primitive) == 1,
                 os.str() + ": edge is not at height one");
      rec.expect(rays[k].direction == d.primitive && rays[k].weight == d.multiplicity, os.str() + ": ray");
    }
  }
  return rec.done("500 cones");
}

Outcome amoeba() {
  Recorder rec;
  const auto o = amoeba_oracle();
  const double l2 = std::log(2.0);
  const auto b = branch_vertex(o, {-1, 0}, {0, -1});
  const double t = critical_time(o, {-1, 0}, {0, -1});
  const double x = tangency_point(o, {-1, -1}).x;
  const double err = std::max({std::abs(b.x + 2 * l2), std::abs(b.y + 2 * l2), std::abs(t - 2 * l2), std::abs(x + l2)});
  rec.expect(err <= 1e-12, "error " + fmt("%.3g", err));
  return rec.done("max error " + fmt("%.3g", err));
}

Outcome ellipse() {
  Recorder rec;
  const double a = (1 + std::sqrt(5.0)) / 2;
  const auto o = ellipse_oracle(a);
  const auto g = build_caustic(o, 1e-3, 8);
  rec.expect(std::abs(g.final_time - 1) <= 1e-9, "final time " + fmt("%.12g", g.final_time));
  const auto* f = g.final_segment();
  rec.expect(f != nullptr, "no final segment");
  if (f) {
    rec.expect(f->direction.x == 0, "final segment not vertical");
    rec.expect(std::abs(f->length - 2 * (a - 1)) <= 1e-9, "final length " + fmt("%.12g", f->length));
  }
  const double ct = critical_time(o, {1, 0}, {0, 1});
  rec.expect(std::abs(ct - (1 + a - std::sqrt(1 + a * a))) <= 1e-12, "critical time");
  for (const auto& e : g.edges) {
    if (e.kind != EdgeKind::FinalSegment) rec.expect(e.weight == 1, "non-final edge of weight " + std::to_string(e.weight));
  }
  return rec.done(std::to_string(g.edges.size()) + " edges");
}

Outcome cubic() {
  Recorder rec;
  const auto g = build_caustic(nodal_cubic_oracle(), 1e-3, 8);
  // Maximal straight chains of weight-2 edges.
  std::vector<bool> used(g.edges.size(), false);
  int chains = 0;
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    if (used[i] || g.edges[i].weight != 2) continue;
    ++chains;
    std::vector<std::size_t> stack{i};
    used[i] = true;
    bool horizontal = true, at_origin = false;
    while (!stack.empty()) {
      const auto& e = g.edges[stack.back()];
      stack.pop_back();
      horizontal = horizontal && e.direction.y == 0;
      for (int v : {e.from, e.to}) {
        if (v < 0) continue;
        const auto& p = g.vertices[v].pos;
        if (std::abs(p.x) < 1e-12 && std::abs(p.y) < 1e-12) at_origin = true;
      }
      for (std::size_t k = 0; k < g.edges.size(); ++k) {
        const auto& o = g.edges[k];
        if (used[k] || o.weight != 2 || det2(o.direction, e.direction) != 0) continue;
        if (o.from == e.from || o.from == e.to || o.to == e.from || o.to == e.to) {
          used[k] = true;
          stack.push_back(k);
        }
      }
    }
    rec.expect(horizontal, "weight-2 edge not horizontal");
    rec.expect(at_origin, "weight-2 edge misses the origin corner");
  }
  rec.expect(chains == 1, std::to_string(chains) + " weight-2 edges");
  // symmetry y -> -y
  double worst = 0;
  for (const auto& e : g.edges) {
    if (e.to < 0) continue;
    const auto a = g.vertices[e.from].pos, b = g.vertices[e.to].pos;
    double best = 1e300;
    for (const auto& o : g.edges) {
      if (o.to < 0 || o.weight != e.weight) continue;
      const auto c = g.vertices[o.from].pos, d = g.vertices[o.to].pos;
      const double m1 = std::max({std::abs(c.x - a.x), std::abs(c.y + a.y), std::abs(d.x - b.x), std::abs(d.y + b.y)});
      const double m2 = std::max({std::abs(d.x - a.x), std::abs(d.y + a.y), std::abs(c.x - b.x), std::abs(c.y + b.y)});
      best = std::min({best, m1, m2});
    }
    worst = std::max(worst, best);
  }
  rec.expect(worst <= 1e-9, "asymmetry " + fmt("%.3g", worst));
  return rec.done("one weight-2 edge, asymmetry " + fmt("%.2g", worst));
}

Outcome polygon_oracle_consistency() {
  Recorder rec;
  std::mt19937_64 rng(corpus_seed() + 111);
  double worst = 0;
  for (int i = 0; i < 20; ++i) {
    const auto p = random_lattice_polygon(rng, 20, 8);
    const auto exact = to_real(run(p).caustic);
    const auto g = build_caustic(polygon_oracle(p));
    if (g.vertices.size() != exact.vertices.size()) {
      rec.fail("polygon " + std::to_string(i) + ": vertex count");
      continue;
    }
    for (std::size_t k = 0; k < g.vertices.size(); ++k) {
      worst = std::max({worst, std::abs(g.vertices[k].pos.x - exact.vertices[k].pos.x),
                        std::abs(g.vertices[k].pos.y - exact.vertices[k].pos.y),
                        std::abs(g.vertices[k].time - exact.vertices[k].time)});
    }
  }
  rec.expect(worst <= 1e-9, "deviation " + fmt("%.3g", worst));
  return rec.done("20 polygons, max deviation " + fmt("%.2g", worst));
}

Outcome discrete_step() {
  Recorder rec;
  std::mt19937_64 rng(corpus_seed() + 113);
  for (int i = 0; i < 50; ++i) {
    const auto p = random_lattice_polygon(rng, 20, 8);
    rec.expect(same_state(interior_hull_step(p), propagate(p, Rational(1))), "polygon " + std::to_string(i));
  }
  return rec.done("50 polygons, exact");
}

// L1 distance from a lattice point to the lattice complement, by search.
std::int64_t l1_to_complement(const std::function<bool(std::int64_t, std::int64_t)>& in, std::int64_t x, std::int64_t y,
                              std::int64_t cap) {
  for (std::int64_t r = 0; r <= cap; ++r) {
    for (std::int64_t dx = -r; dx <= r; ++dx) {
      const std::int64_t dy = r - std::abs(dx);
      if (!in(x + dx, y + dy) || !in(x + dx, y - dy)) return r;
    }
  }
  return cap + 1;
}

std::vector<RealPoint> sample_polyline(const std::vector<RealPoint>& pl, double step) {
  std::vector<RealPoint> out;
  for (std::size_t i = 0; i + 1 < pl.size(); ++i) {
    const auto a = pl[i], b = pl[i + 1];
    const int n = std::max(1, static_cast<int>(std::hypot(b.x - a.x, b.y - a.y) / step));
    for (int k = 0; k <= n; ++k) out.push_back({a.x + (b.x - a.x) * k / n, a.y + (b.y - a.y) * k / n});
  }
  return out;
}

Outcome staircase_fronts() {
  Recorder rec;
  using Pred = std::function<bool(std::int64_t, std::int64_t)>;
  const Pred c1 = [](std::int64_t x, std::int64_t y) { return x >= 2 || y <= 3; };
  const Pred c2 = [](std::int64_t x, std::int64_t y) { return y <= 3 || y <= x + 1; };
  // A(x, y) = (x + y - 3, y) maps the first cone onto the second.
  for (std::int64_t x = -20; x <= 20; ++x) {
    for (std::int64_t y = -20; y <= 20; ++y) rec.expect(c1(x, y) == c2(x + y - 3, y), "cones are not equivalent");
  }
  std::size_t points = 0;
  bool families_differ = false;
  for (int which : {1, 2}) {
    const auto d = staircase_cone(which);
    const Pred& in = which == 1 ? c1 : c2;
    for (int m : {1, 2}) {
      const auto e = erosion(lattice_points(d, 1.0), Basis{}, m);
      for (std::int64_t x = 0; x <= static_cast<std::int64_t>(d.xmax); ++x) {
        for (std::int64_t y = 0; y <= static_cast<std::int64_t>(d.ymax); ++y) {
          const bool want = l1_to_complement(in, x, y, m + 1) > m;
          rec.expect(e.contains({x, y}) == want, "cone " + std::to_string(which) + " m=" + std::to_string(m) +
                                                     " at (" + std::to_string(x) + "," + std::to_string(y) + ")");
          points += want;
        }
      }
      if (which == 1) {
        // transport the first family and compare with the second
        const auto e2 = erosion(lattice_points(staircase_cone(2), 1.0), Basis{}, m);
        for (std::int64_t x = 0; x <= 5; ++x) {
          for (std::int64_t y = 0; y <= 5; ++y) {
            const LatticeVector q{x + y - 3, y};
            if (q.x >= 0 && q.x <= 7 && e.contains({x, y}) != e2.contains(q)) families_differ = true;
          }
        }
      }
    }
    // The h -> 0 limits are the L1 offsets of the cone boundary.
    const double h = 1.0 / 16;
    for (int m : {1, 2}) {
      const auto front = scaled_front_boundary(d, h, m, Basis{});
      const std::vector<RealPoint> limit =
          which == 1 ? std::vector<RealPoint>{{0, 3.0 - m}, {2, 3.0 - m}, {2.0 + m, 3}, {2.0 + m, 5}}
                     : std::vector<RealPoint>{{0, 3.0 - m}, {2, 3.0 - m}, {4.0 + m, 5}};
      const double dist = hausdorff(front, sample_polyline(limit, h / 4));
      rec.expect(dist <= 2 * h, "cone " + std::to_string(which) + " m=" + std::to_string(m) + " limit distance " +
                                    fmt("%.3g", dist));
    }
  }
  rec.expect(families_differ, "fronts of equivalent cones coincide");
  return rec.done(std::to_string(points) + " window points exact, families differ, limits within 2h");
}

Outcome inverse() {
  Recorder rec;
  auto lengths = [](std::initializer_list<long> v) {
    std::vector<Rational> out;
    for (long x : v) out.push_back(Rational(x));
    return out;
  };
  const auto ok = realizability_check(branched_segment_example(lengths({3, 4, 4, 4, 2, 2, 2})));
  rec.expect(ok.equalities == "l1=l2=l3=l4+l5=l4+l6", "equalities " + ok.equalities);
  const auto sides = ok.nontrivial_sides();
  rec.expect(sides.size() == 1 && sides[0]->text == "l3+l4-2l5>=0", "side inequalities");
  const auto bad = realizability_check(branched_segment_example(lengths({3, 4, 4, 4, 1, 3, 3})));
  rec.expect(bad.verdict == Verdict::Violated, "forbidden lengths not violated");
  rec.expect(!bad.convex, "forbidden lengths give a convex polygon");
  for (std::size_t i = 0; const auto& p : corpus50()) {
    rec.expect(round_trip_check(p).passed(), "round trip polygon " + std::to_string(i++));
  }
  return rec.done("equalities, inequality, violation and 50 round trips");
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*run)();
    double budget;  ///< seconds; 0 = none
  };
  const Criterion criteria[] = {
      {1, "disc identity", disc_identity, 5},
      {2, "noether formula", noether, 10},
      {3, "trivalency", trivalency, 0},
      {4, "huygens", huygens, 0},
      {5, "critical time and length coherence", coherence, 0},
      {6, "fixed fixtures", fixed_fixtures, 0},
      {7, "cone rule vs oracle", cone_rule_oracle, 10},
      {8, "amoeba checkpoints", amoeba, 0},
      {9, "ellipse", ellipse, 0},
      {10, "nodal cubic", cubic, 0},
      {11, "polygon oracle consistency", polygon_oracle_consistency, 0},
      {12, "discrete step", discrete_step, 0},
      {13, "staircase fronts", staircase_fronts, 0},
      {14, "inverse problem", inverse, 0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& ex) {
      o = {false, std::string("exception: ") + ex.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget > 0 && secs > c.budget) {
      o.ok = false;
      o.detail += "; over time budget";
    }
    std::printf("%s %2d %s: %s (%.2fs)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    failed += !o.ok;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
