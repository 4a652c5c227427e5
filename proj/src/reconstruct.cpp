// SPDX-License-Identifier: Apache-2.0
#include "tc/reconstruct.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace tc {

namespace {

struct FormPoint {
  LinearForm x, y;
};

LinearForm zero_form(std::size_t n) { return {std::vector<Rational>(n, Rational(0))}; }

LinearForm add(const LinearForm& a, const LinearForm& b, const Rational& k = 1) {
  LinearForm r = a;
  for (std::size_t i = 0; i < r.coeff.size(); ++i) r.coeff[i] += k * b.coeff[i];
  return r;
}

LinearForm unit(std::size_t n, std::size_t i, const Rational& k = 1) {
  LinearForm f = zero_form(n);
  f.coeff[i] = k;
  return f;
}

std::string fmt(Covector l) {
  std::ostringstream os;
  os << l;
  return os.str();
}

struct Leaf {
  FormPoint pos;
  LinearForm path;
  Covector left, right;
};

class Walker {
 public:
  explicit Walker(const AbstractCaustic& a) : a_(a), n_(a.edges.size()) {
    std::set<std::string> ids;
    for (std::size_t i = 0; i < n_; ++i) {
      const auto& e = a.edges[i];
      if (!ids.insert(e.id).second) throw ReconstructError("duplicate edge id " + e.id);
      if (e.weight < 1) throw ReconstructError("edge " + e.id + " has non-positive weight");
      if (e.id == a.final_edge) {
        final_index_ = i;
        continue;
      }
      if (!outgoing_.insert(e.from).second) throw ReconstructError("vertex " + e.from + " has two outgoing edges");
      children_[e.to].push_back(i);
    }
  }

  std::vector<Leaf> leaves;
  std::map<std::string, FormPoint> placed;

  void run() {
    if (a_.final_kind == FinalKind::Segment) {
      if (a_.ends.size() != 2) throw ReconstructError("a final segment needs two ends");
      if (final_index_ == n_) throw ReconstructError("final segment edge " + a_.final_edge + " not found");
      const auto& fe = a_.edges[final_index_];
      if (fe.from != a_.ends[0].vertex || fe.to != a_.ends[1].vertex) {
        throw ReconstructError("final segment edge must run from the first end to the second");
      }
      if (fe.weight != 2) throw ReconstructError("final segment must have weight 2");
      const auto& c0 = a_.ends[0].normals;
      const auto& c1 = a_.ends[1].normals;
      if (c0.size() < 3 || c1.size() < 3) throw ReconstructError("final segment end needs at least two edges");
      const Covector n = c0.front();
      if (c0.back() != -n || c1.front() != -n || c1.back() != n) {
        throw ReconstructError("final segment normal chains must run between antipodal normals n, -n and back");
      }
      const LatticeVector dir{-n.b, n.a};
      FormPoint a{zero_form(n_), zero_form(n_)};
      FormPoint b{unit(n_, final_index_, Rational(dir.x)), unit(n_, final_index_, Rational(dir.y))};
      expand(a_.ends[0].vertex, c0, a, zero_form(n_), false);
      expand(a_.ends[1].vertex, c1, b, zero_form(n_), false);
    } else if (a_.final_kind == FinalKind::Point) {
      if (a_.ends.size() != 1) throw ReconstructError("a final point needs exactly one vertex entry");
      auto cyc = a_.ends[0].normals;
      if (cyc.size() < 3) throw ReconstructError("final point needs at least three normals");
      cyc.push_back(cyc.front());
      expand(a_.ends[0].vertex, cyc, {zero_form(n_), zero_form(n_)}, zero_form(n_), false);
    } else {
      throw ReconstructError("unknown final type");
    }
    std::size_t used = 0;
    for (const auto& [v, _] : children_) used += visited_.count(v);
    if (used != children_.size()) throw ReconstructError("tree is not connected to the final locus");
  }

 private:
  // `normals` has one more entry than v has children.
  void expand(const std::string& v, const std::vector<Covector>& normals, const FormPoint& at, const LinearForm& path,
              bool branch) {
    if (!visited_.insert(v).second) throw ReconstructError("cycle through vertex " + v);
    placed[v] = at;
    const auto it = children_.find(v);
    const std::vector<std::size_t> kids = it == children_.end() ? std::vector<std::size_t>{} : it->second;
    if (kids.size() + 1 != normals.size()) {
      throw ReconstructError("vertex " + v + " has " + std::to_string(kids.size()) + " incoming edges, expected " +
                             std::to_string(normals.size() - 1));
    }
    if (branch && kids.size() != 2) throw ReconstructError("branch vertex " + v + " is not trivalent");
    for (std::size_t j = 0; j < kids.size(); ++j) {
      const auto& e = a_.edges[kids[j]];
      const Covector l = normals[j];
      const Covector r = normals[j + 1];
      const Covector step = r - l;
      if (det2(l, r) != e.weight || gcd_abs(step.a, step.b) != e.weight) {
        throw ReconstructError("edge " + e.id + " of weight " + std::to_string(e.weight) +
                               " does not fit between normals " + fmt(l) + " and " + fmt(r));
      }
      const LatticeVector dir = unit_pairing_direction(l, r);
      const FormPoint outer{add(at.x, unit(n_, kids[j]), Rational(-dir.x)), add(at.y, unit(n_, kids[j]), Rational(-dir.y))};
      const LinearForm p = add(path, unit(n_, kids[j]));
      const auto sub = children_.find(e.from);
      if (sub == children_.end()) {
        if (!visited_.insert(e.from).second) throw ReconstructError("leaf " + e.from + " reached twice");
        placed[e.from] = outer;
        leaves.push_back({outer, p, l, r});
        continue;
      }
      if (sub->second.size() != 2) throw ReconstructError("branch vertex " + e.from + " is not trivalent");
      if (e.weight != 1) throw ReconstructError("branch vertex " + e.from + " emits weight " + std::to_string(e.weight));
      const std::int64_t m1 = a_.edges[sub->second[0]].weight;
      const std::int64_t m2 = a_.edges[sub->second[1]].weight;
      if (m1 > 1 && m2 > 1) throw ReconstructError("branch vertex " + e.from + " has two heavy incoming edges");
      const Covector mid = m2 * l + m1 * r;
      expand(e.from, {l, mid, r}, outer, p, true);
    }
  }

  const AbstractCaustic& a_;
  std::size_t n_;
  std::size_t final_index_ = static_cast<std::size_t>(-1);
  std::set<std::string> outgoing_;
  std::map<std::string, std::vector<std::size_t>> children_;
  std::set<std::string> visited_;
};

RationalPoint evaluate_point(const FormPoint& p, const std::vector<AbstractEdge>& e) {
  return {p.x.eval(e), p.y.eval(e)};
}

std::vector<RationalPoint> cleaned(const std::vector<RationalPoint>& pts) {
  std::vector<RationalPoint> v;
  for (const auto& p : pts) {
    if (v.empty() || !(v.back() == p)) v.push_back(p);
  }
  while (v.size() > 1 && v.front() == v.back()) v.pop_back();
  return v;
}

}  // namespace

Rational LinearForm::eval(const std::vector<AbstractEdge>& edges) const {
  Rational s = 0;
  for (std::size_t i = 0; i < coeff.size(); ++i) s += coeff[i] * edges[i].len;
  return s;
}

bool LinearForm::has_negative() const {
  return std::any_of(coeff.begin(), coeff.end(), [](const Rational& c) { return c < 0; });
}

std::string LinearForm::str(const std::vector<AbstractEdge>& edges) const {
  std::string out;
  for (std::size_t i = 0; i < coeff.size(); ++i) {
    const Rational& c = coeff[i];
    if (c == 0) continue;
    const Rational mag = abs(c);
    if (c < 0) {
      out += "-";
    } else if (!out.empty()) {
      out += "+";
    }
    if (mag != 1) out += mag.get_den() == 1 ? to_string(mag) : "(" + to_string(mag) + ")";
    out += edges[i].id;
  }
  return out.empty() ? "0" : out;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Realizable: return "realizable";
    case Verdict::Boundary: return "boundary";
    case Verdict::Violated: return "violated";
  }
  return "?";
}

std::vector<const Inequality*> RealizabilityReport::nontrivial_sides() const {
  std::vector<const Inequality*> out;
  for (const auto& s : sides) {
    if (!s.trivial) out.push_back(&s);
  }
  return out;
}

RealizabilityReport realizability_check(const AbstractCaustic& a) {
  Walker w(a);
  w.run();
  RealizabilityReport rep;
  const auto& e = a.edges;

  for (const auto& leaf : w.leaves) rep.path_sums.push_back(leaf.path);
  std::vector<std::string> parts;
  for (const auto& p : rep.path_sums) parts.push_back(p.str(e));
  for (std::size_t i = 0; i < parts.size(); ++i) rep.equalities += (i ? "=" : "") + parts[i];
  for (std::size_t i = 1; i < rep.path_sums.size(); ++i) {
    if (rep.path_sums[i].eval(e) != rep.path_sums[0].eval(e)) rep.equalities_hold = false;
  }

  for (std::size_t i = 0; i < e.size(); ++i) {
    Inequality q;
    q.form = unit(e.size(), i);
    q.value = e[i].len;
    q.strict = true;
    q.trivial = true;
    q.satisfied = e[i].len > 0;
    q.text = e[i].id + ">0";
    rep.positivity.push_back(q);
  }

  const std::size_t k = w.leaves.size();
  for (std::size_t i = 0; i < k; ++i) {
    const Leaf& p = w.leaves[i];
    const Leaf& q = w.leaves[(i + 1) % k];
    if (p.right != q.left) throw ReconstructError("leaves " + std::to_string(i) + " and next do not share a side normal");
    const Covector n = p.right;
    const LatticeVector tau{n.b, -n.a};
    const LinearForm dx = add(q.pos.x, p.pos.x, -1);
    const LinearForm dy = add(q.pos.y, p.pos.y, -1);
    const bool use_x = tau.x != 0 && (tau.y == 0 || std::abs(tau.x) <= std::abs(tau.y));
    LinearForm side = zero_form(e.size());
    side = add(side, use_x ? dx : dy, Rational(1) / Rational(use_x ? tau.x : tau.y));
    Inequality s;
    s.form = side;
    s.value = side.eval(e);
    s.trivial = !side.has_negative();
    s.satisfied = s.value >= 0;
    s.text = side.str(e) + ">=0";
    rep.sides.push_back(s);
  }

  for (const auto& leaf : w.leaves) rep.polygon.push_back(evaluate_point(leaf.pos, e));
  rep.convex = is_convex_cycle(rep.polygon);

  const bool positive = std::all_of(rep.positivity.begin(), rep.positivity.end(), [](const auto& q) { return q.satisfied; });
  const bool sides_ok = std::all_of(rep.sides.begin(), rep.sides.end(), [](const auto& q) { return q.satisfied; });
  const bool tight = std::any_of(rep.sides.begin(), rep.sides.end(), [](const auto& q) { return q.value == 0; });
  if (!rep.equalities_hold || !positive || !sides_ok) {
    rep.verdict = Verdict::Violated;
  } else if (tight) {
    rep.verdict = Verdict::Boundary;
  } else {
    rep.verdict = Verdict::Realizable;
  }
  return rep;
}

bool is_convex_cycle(const std::vector<RationalPoint>& pts) {
  std::vector<RationalPoint> v = cleaned(pts);
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const auto& a = v[(i + v.size() - 1) % v.size()];
      const auto& b = v[i];
      const auto& c = v[(i + 1) % v.size()];
      if (orient(a, b, c) == 0) {
        const RationalPoint u = b - a;
        const RationalPoint w = c - b;
        if (u.x * w.x + u.y * w.y < 0) return false;  // backtracking spike
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3) return false;
  Rational area = 0;
  for (std::size_t i = 0; i < v.size(); ++i) area += cross(v[i], v[(i + 1) % v.size()]);
  if (area <= 0) return false;
  try {
    RationalPolygon::from_vertices(v);
  } catch (const GeometryError&) {
    return false;
  }
  return true;
}

ReconstructedDomain reconstruct_domain(const ExactCaustic& g) {
  ReconstructedDomain d;
  for (int v : g.leaf_order) d.vertices.push_back(g.vertices[static_cast<std::size_t>(v)].pos);
  d.convex = is_convex_cycle(d.vertices);
  return d;
}

AbstractCaustic extract_abstract(const ExactCaustic& g) {
  AbstractCaustic a;
  a.final_kind = g.final_kind;
  std::vector<std::vector<std::size_t>> incoming(g.vertices.size());
  std::vector<int> out_count(g.vertices.size(), 0);
  for (std::size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.kind == EdgeKind::FinalSegment) continue;
    incoming[static_cast<std::size_t>(e.to)].push_back(i);
    ++out_count[static_cast<std::size_t>(e.from)];
  }
  // Orders the incoming edges of v so each one's right normal is the next one's left.
  auto ordered = [&](int v, bool cycle) {
    auto in = incoming[static_cast<std::size_t>(v)];
    std::vector<std::size_t> out;
    if (in.empty()) return out;
    std::size_t start = in.front();
    if (!cycle) {
      for (auto i : in) {
        const bool has_pred =
            std::any_of(in.begin(), in.end(), [&](std::size_t j) { return g.edges[j].right == g.edges[i].left; });
        if (!has_pred) start = i;
      }
    }
    out.push_back(start);
    while (out.size() < in.size()) {
      const Covector r = g.edges[out.back()].right;
      auto it = std::find_if(in.begin(), in.end(), [&](std::size_t j) { return g.edges[j].left == r; });
      if (it == in.end()) throw ReconstructError("incoming edges at a vertex do not chain");
      out.push_back(*it);
    }
    return out;
  };
  auto name = [](int v) { return "v" + std::to_string(v); };
  std::map<int, int> leaf_uses;
  auto leaf_name = [&](int v) {
    if (out_count[static_cast<std::size_t>(v)] == 1) return name(v);
    return name(v) + "_" + std::to_string(++leaf_uses[v]);
  };
  auto push = [&](std::size_t i, const std::string& from, const std::string& to) {
    const auto& e = g.edges[i];
    a.edges.push_back({"l" + std::to_string(i), from, to, e.length, e.weight});
  };
  std::function<void(int)> descend = [&](int v) {
    for (auto i : ordered(v, false)) {
      const int from = g.edges[i].from;
      const bool leaf = g.vertices[static_cast<std::size_t>(from)].kind == VertexKind::Leaf;
      push(i, leaf ? leaf_name(from) : name(from), name(v));
      if (!leaf) descend(from);
    }
  };
  auto chain_normals = [&](const std::vector<std::size_t>& order, bool cycle) {
    std::vector<Covector> n;
    for (auto i : order) n.push_back(g.edges[i].left);
    if (!cycle) n.push_back(g.edges[order.back()].right);
    return n;
  };

  if (g.final_kind == FinalKind::Segment) {
    std::size_t fi = g.edges.size();
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (g.edges[i].kind == EdgeKind::FinalSegment) fi = i;
    }
    if (fi == g.edges.size()) throw ReconstructError("caustic has no final segment edge");
    const auto& fe = g.edges[fi];
    push(fi, name(fe.from), name(fe.to));
    a.final_edge = a.edges.back().id;
    for (int v : {fe.from, fe.to}) {
      a.ends.push_back({name(v), chain_normals(ordered(v, false), false)});
      descend(v);
    }
  } else if (g.final_kind == FinalKind::Point) {
    const int v = g.final_vertices.front();
    const auto order = ordered(v, true);
    a.ends.push_back({name(v), chain_normals(order, true)});
    for (auto i : order) {
      const int from = g.edges[i].from;
      const bool leaf = g.vertices[static_cast<std::size_t>(from)].kind == VertexKind::Leaf;
      push(i, leaf ? leaf_name(from) : name(from), name(v));
      if (!leaf) descend(from);
    }
  } else {
    throw ReconstructError("caustic has no final locus");
  }
  return a;
}

VerificationReport round_trip_check(const RationalPolygon& poly) {
  CheckResult r;
  r.name = "round_trip";
  auto fail = [&](std::string w) {
    r.status = CheckStatus::Fail;
    r.witnesses.push_back(std::move(w));
  };
  const ExactResult res = run(poly);
  const ReconstructedDomain d = reconstruct_domain(res.caustic);
  try {
    if (!(RationalPolygon::from_vertices(cleaned(d.vertices)) == poly)) fail("leaf cycle differs from the polygon");
  } catch (const GeometryError& ex) {
    fail(std::string("leaf cycle is not a polygon: ") + ex.what());
  }
  try {
    const AbstractCaustic a = extract_abstract(res.caustic);
    const RealizabilityReport rep = realizability_check(a);
    if (rep.verdict == Verdict::Violated) {
      fail("abstract caustic reported violated: " + rep.equalities);
    }
    const RationalPoint origin = res.caustic.vertices[static_cast<std::size_t>(res.caustic.final_vertices.front())].pos;
    std::vector<RationalPoint> moved;
    for (const auto& p : rep.polygon) moved.push_back(p + origin);
    if (!(RationalPolygon::from_vertices(cleaned(moved)) == poly)) fail("polygon rebuilt from lengths differs");
  } catch (const std::exception& ex) {
    fail(std::string("abstract reconstruction failed: ") + ex.what());
  }
  VerificationReport out;
  out.checks.push_back(r);
  return out;
}

AbstractCaustic branched_segment_example(const std::vector<Rational>& l) {
  if (l.size() != 7) throw ReconstructError("expected seven lengths l0..l6");
  AbstractCaustic a;
  a.edges = {{"l0", "A", "B", l[0], 2}, {"l1", "a1", "A", l[1], 1}, {"l2", "a2", "A", l[2], 1},
             {"l3", "b1", "B", l[3], 1}, {"l4", "C", "B", l[4], 1},  {"l5", "c1", "C", l[5], 1},
             {"l6", "c2", "C", l[6], 3}};
  a.final_kind = FinalKind::Segment;
  a.final_edge = "l0";
  a.ends = {{"A", {{0, -1}, {1, 0}, {0, 1}}}, {"B", {{0, 1}, {-1, 0}, {0, -1}}}};
  return a;
}

}  // namespace tc
