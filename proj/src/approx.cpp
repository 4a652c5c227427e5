// SPDX-License-Identifier: Apache-2.0
#include "tc/approx.hpp"

#include <algorithm>
#include <array>
#include <iterator>
#include <cmath>
#include <limits>
#include <memory>

namespace tc {

namespace {

bool lex_less(LatticeVector a, LatticeVector b) { return a.x != b.x ? a.x < b.x : a.y < b.y; }

class Grid {
 public:
  explicit Grid(const Box& b)
      : box_(b),
        w_(b.empty() ? 0 : static_cast<std::size_t>(b.xmax - b.xmin + 1)),
        h_(b.empty() ? 0 : static_cast<std::size_t>(b.ymax - b.ymin + 1)),
        cells_(w_ * h_, 0) {}

  bool get(std::int64_t x, std::int64_t y) const {
    if (!box_.contains({x, y})) return false;
    return cells_[index(x, y)] != 0;
  }
  void set(std::int64_t x, std::int64_t y, bool v) { cells_[index(x, y)] = v ? 1 : 0; }
  const Box& box() const { return box_; }

 private:
  std::size_t index(std::int64_t x, std::int64_t y) const {
    return static_cast<std::size_t>(y - box_.ymin) * w_ + static_cast<std::size_t>(x - box_.xmin);
  }
  Box box_;
  std::size_t w_, h_;
  std::vector<std::uint8_t> cells_;
};

Grid erode_grid(Grid g, const Basis& b, int m) {
  const std::array<LatticeVector, 4> steps{b.b1, -b.b1, b.b2, -b.b2};
  const Box box = g.box();
  for (int k = 0; k < m; ++k) {
    Grid next(box);
    for (std::int64_t y = box.ymin; y <= box.ymax; ++y) {
      for (std::int64_t x = box.xmin; x <= box.xmax; ++x) {
        if (!g.get(x, y)) continue;
        bool keep = true;
        for (const auto& s : steps) keep = keep && g.get(x + s.x, y + s.y);
        next.set(x, y, keep);
      }
    }
    g = std::move(next);
  }
  return g;
}

// Working grid large enough that m steps never read past it for members of `out`.
Grid load(const LatticeSet& s, std::int64_t margin) {
  if (s.is_explicit()) {
    Grid g(s.box());
    for (const auto& p : s.points()) g.set(p.x, p.y, true);
    return g;
  }
  Grid g(s.box().grown(margin));
  const Box& wb = g.box();
  for (std::int64_t y = wb.ymin; y <= wb.ymax; ++y) {
    for (std::int64_t x = wb.xmin; x <= wb.xmax; ++x) g.set(x, y, s.contains({x, y}));
  }
  return g;
}

std::vector<LatticeVector> members(const Grid& g, const Box& window) {
  std::vector<LatticeVector> out;
  for (std::int64_t x = window.xmin; x <= window.xmax; ++x) {
    for (std::int64_t y = window.ymin; y <= window.ymax; ++y) {
      if (g.get(x, y)) out.push_back({x, y});
    }
  }
  return out;
}

Box scaled_box(const PlaneDomain& d, double h) {
  return {static_cast<std::int64_t>(std::ceil(d.xmin / h - 1e-9)), static_cast<std::int64_t>(std::ceil(d.ymin / h - 1e-9)),
          static_cast<std::int64_t>(std::floor(d.xmax / h + 1e-9)),
          static_cast<std::int64_t>(std::floor(d.ymax / h + 1e-9))};
}

int steps_for(double h, double t) {
  if (!(h > 0) || t < 0) throw GeometryError("scaled_front needs h > 0 and t >= 0");
  return static_cast<int>(std::floor(t / h + 1e-9));
}

std::vector<RealPoint> scale(const std::vector<LatticeVector>& pts, double h) {
  std::vector<RealPoint> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back({h * static_cast<double>(p.x), h * static_cast<double>(p.y)});
  return out;
}

}  // namespace

Basis::Basis(LatticeVector u, LatticeVector v) : b1(u), b2(v) {
  if (std::abs(det2(u, v)) != 1) throw GeometryError("basis vectors must have determinant +-1");
}

std::int64_t Basis::reach() const {
  return std::max({std::abs(b1.x), std::abs(b1.y), std::abs(b2.x), std::abs(b2.y)});
}

LatticeSet LatticeSet::from_points(std::vector<LatticeVector> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  LatticeSet s;
  if (!pts.empty()) {
    s.box_ = {pts.front().x, pts.front().y, pts.front().x, pts.front().y};
    for (const auto& p : pts) {
      s.box_.xmin = std::min(s.box_.xmin, p.x);
      s.box_.xmax = std::max(s.box_.xmax, p.x);
      s.box_.ymin = std::min(s.box_.ymin, p.y);
      s.box_.ymax = std::max(s.box_.ymax, p.y);
    }
  }
  s.pts_ = std::move(pts);
  return s;
}

LatticeSet LatticeSet::from_points(std::vector<LatticeVector> pts, Box window) {
  LatticeSet s = from_points(std::move(pts));
  for (const auto& p : s.pts_) {
    if (!window.contains(p)) throw GeometryError("lattice set window must contain every point");
  }
  s.box_ = window;
  return s;
}

LatticeSet LatticeSet::from_predicate(Predicate inside, Box window) {
  LatticeSet s;
  s.pred_ = std::move(inside);
  s.box_ = window;
  return s;
}

bool LatticeSet::contains(LatticeVector p) const {
  if (pred_) return pred_(p.x, p.y);
  return std::binary_search(pts_.begin(), pts_.end(), p, lex_less);
}

std::vector<LatticeVector> LatticeSet::points() const {
  if (!pred_) return pts_;
  std::vector<LatticeVector> out;
  for (std::int64_t x = box_.xmin; x <= box_.xmax; ++x) {
    for (std::int64_t y = box_.ymin; y <= box_.ymax; ++y) {
      if (pred_(x, y)) out.push_back({x, y});
    }
  }
  return out;
}

bool operator==(const LatticeSet& a, const LatticeSet& b) { return a.points() == b.points(); }

WaveFrontState interior_hull_step(const RationalPolygon& poly) {
  if (!poly.is_lattice_polygon()) throw GeometryError("interior_hull_step needs a lattice polygon");
  Integer xmin = poly.vertex(0).x.get_num(), xmax = xmin;
  Integer ymin = poly.vertex(0).y.get_num(), ymax = ymin;
  for (const auto& v : poly.vertices()) {
    xmin = std::min(xmin, Integer(v.x.get_num()));
    xmax = std::max(xmax, Integer(v.x.get_num()));
    ymin = std::min(ymin, Integer(v.y.get_num()));
    ymax = std::max(ymax, Integer(v.y.get_num()));
  }
  std::vector<RationalPoint> inner;
  for (auto x = to_int64(xmin); x <= to_int64(xmax); ++x) {
    for (auto y = to_int64(ymin); y <= to_int64(ymax); ++y) {
      const RationalPoint p{Rational(x), Rational(y)};
      if (contains_strictly(poly, p)) inner.push_back(p);
    }
  }
  return state_from_points(std::move(inner));
}

LatticeSet erosion(const LatticeSet& s, const Basis& b, int m) {
  if (m < 0) throw GeometryError("erosion steps must be non-negative");
  const Grid g = erode_grid(load(s, static_cast<std::int64_t>(m) * b.reach()), b, m);
  if (s.is_explicit()) return LatticeSet::from_points(members(g, s.box()), s.box());
  // Predicate sets stay predicate sets: the grid answers inside the window,
  // and further out m steps of erosion are the same as requiring every
  // p + k1 b1 + k2 b2 with |k1| + |k2| <= m to be a member.
  auto window = std::make_shared<Grid>(std::move(g));
  const Box box = s.box();
  auto inside = [window, box, s, b, m](std::int64_t x, std::int64_t y) {
    if (box.contains({x, y})) return window->get(x, y);
    for (std::int64_t k1 = -m; k1 <= m; ++k1) {
      const std::int64_t r = m - std::abs(k1);
      for (std::int64_t k2 = -r; k2 <= r; ++k2) {
        if (!s.contains({x + k1 * b.b1.x + k2 * b.b2.x, y + k1 * b.b1.y + k2 * b.b2.y})) return false;
      }
    }
    return true;
  };
  return LatticeSet::from_predicate(inside, box);
}

std::vector<LatticeVector> boundary_points(const LatticeSet& s, const Basis& b) {
  std::vector<LatticeVector> out;
  for (const auto& p : s.points()) {
    for (const auto& st : {b.b1, -b.b1, b.b2, -b.b2}) {
      if (!s.contains(p + st)) {
        out.push_back(p);
        break;
      }
    }
  }
  return out;
}

LatticeSet lattice_points(const PlaneDomain& d, double h) {
  auto inside = d.inside;
  return LatticeSet::from_predicate(
      [inside, h](std::int64_t x, std::int64_t y) {
        return inside(h * static_cast<double>(x), h * static_cast<double>(y));
      },
      scaled_box(d, h));
}

std::vector<RealPoint> scaled_front(const PlaneDomain& d, double h, double t, const Basis& b) {
  return scale(erosion(lattice_points(d, h), b, steps_for(h, t)).points(), h);
}

std::vector<RealPoint> scaled_front_boundary(const PlaneDomain& d, double h, double t, const Basis& b) {
  const LatticeSet e = erosion(lattice_points(d, h), b, steps_for(h, t));
  // Boundary relative to the window: members next to a removed point inside it.
  std::vector<LatticeVector> out;
  for (const auto& p : e.points()) {
    for (const auto& st : {b.b1, -b.b1, b.b2, -b.b2}) {
      const LatticeVector q = p + st;
      if (e.box().contains(q) && !e.contains(q)) {
        out.push_back(p);
        break;
      }
    }
  }
  return scale(out, h);
}

std::vector<RealPoint> basis_intersection_front(const PlaneDomain& d, double h, double t,
                                                const std::vector<Basis>& bases) {
  if (bases.empty()) throw GeometryError("basis_intersection_front needs at least one basis");
  const LatticeSet phi = lattice_points(d, h);
  const int m = steps_for(h, t);
  std::vector<LatticeVector> acc = erosion(phi, bases.front(), m).points();
  for (std::size_t i = 1; i < bases.size(); ++i) {
    const auto next = erosion(phi, bases[i], m).points();
    std::vector<LatticeVector> both;
    std::set_intersection(acc.begin(), acc.end(), next.begin(), next.end(), std::back_inserter(both), lex_less);
    acc = std::move(both);
  }
  return scale(acc, h);
}

double hausdorff(const std::vector<RealPoint>& a, const std::vector<RealPoint>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto directed = [](const std::vector<RealPoint>& from, const std::vector<RealPoint>& to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

PlaneDomain disc_domain(double r) {
  return {[r](double x, double y) { return x * x + y * y <= r * r; }, -r, -r, r, r};
}

PlaneDomain polygon_domain(const RationalPolygon& poly) {
  struct Half {
    double a, b, c;
  };
  std::vector<Half> halves;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto m = poly.edge_monomial(i);
    halves.push_back({static_cast<double>(m.normal.a), static_cast<double>(m.normal.b), m.c.get_d()});
  }
  PlaneDomain d;
  d.inside = [halves](double x, double y) {
    return std::all_of(halves.begin(), halves.end(), [&](const Half& s) { return s.a * x + s.b * y + s.c >= -1e-12; });
  };
  d.xmin = d.xmax = poly.vertex(0).x.get_d();
  d.ymin = d.ymax = poly.vertex(0).y.get_d();
  for (const auto& v : poly.vertices()) {
    d.xmin = std::min(d.xmin, v.x.get_d());
    d.xmax = std::max(d.xmax, v.x.get_d());
    d.ymin = std::min(d.ymin, v.y.get_d());
    d.ymax = std::max(d.ymax, v.y.get_d());
  }
  return d;
}

PlaneDomain staircase_cone(int which) {
  if (which == 1) return {[](double x, double y) { return x >= 2 || y <= 3; }, 0, 0, 5, 5};
  if (which == 2) return {[](double x, double y) { return y <= 3 || y <= x + 1; }, 0, 0, 7, 5};
  throw GeometryError("staircase cone index must be 1 or 2");
}

}  // namespace tc
