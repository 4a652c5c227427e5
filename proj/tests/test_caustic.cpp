// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"
#include "tc/caustic.hpp"
#include "tc/corpus.hpp"
#include "tc/engine.hpp"

using namespace tc;

namespace {

CheckStatus status(const VerificationReport& r, const char* name) {
  const auto* c = r.find(name);
  REQUIRE(c != nullptr);
  return c->status;
}

}  // namespace

TEST_CASE("balancing on fixtures") {
  CHECK(check_balancing(run(test::square2()).caustic).passed());
  CHECK(check_balancing(run(test::triangle32()).caustic).passed());
}

TEST_CASE("a tampered weight breaks balancing at that vertex") {
  auto g = run(test::triangle32()).caustic;
  for (auto& e : g.edges) {
    if (e.weight == 2) e.weight = 5;
  }
  const auto r = check_balancing(g);
  CHECK_FALSE(r.passed());
  const auto* c = r.find("balancing");
  REQUIRE(c);
  REQUIRE_FALSE(c->witnesses.empty());
  CHECK(c->witnesses[0].find("vertex " + std::to_string(g.final_vertices[0])) != std::string::npos);
  CHECK_FALSE(check_local_models(g).passed());
}

TEST_CASE("a synthetic four-valent branch fails the local model check") {
  ExactCaustic g;
  const int c = g.add_vertex(test::pt(0, 0), Rational(1), VertexKind::Branch);
  const LatticeVector dirs[] = {{1, 1}, {-1, 1}, {-1, -1}};
  for (const auto& d : dirs) {
    const int v = g.add_vertex(test::pt(-d.x, -d.y), Rational(0), VertexKind::Leaf);
    CausticEdge<Rational> e;
    e.from = v;
    e.to = c;
    e.direction = d;
    e.length = 1;
    g.edges.push_back(e);
  }
  const int out = g.add_vertex(test::pt(1, -1), Rational(2), VertexKind::FinalPoint);
  CausticEdge<Rational> e;
  e.from = c;
  e.to = out;
  e.direction = {1, -1};
  e.length = 1;
  g.edges.push_back(e);
  g.final_kind = FinalKind::Point;
  g.final_vertices = {out};
  g.final_time = 2;
  CHECK(status(check_local_models(g), "local_models") == CheckStatus::Fail);
}

TEST_CASE("noether identity on the rectangle is exact") {
  const auto p = test::rectangle42();
  const auto r = check_noether(p, run(p).caustic);
  CHECK(r.passed());
  CHECK(r.find("noether")->max_residual == 0.0);
}

TEST_CASE("minkowski additivity") {
  const auto sq = test::square2();
  const auto big = test::poly({{0, 0}, {4, 0}, {4, 4}, {0, 4}});
  CHECK(status(check_minkowski_additivity(sq, big), "minkowski_additivity") == CheckStatus::Pass);
  CHECK(status(check_minkowski_additivity(sq, translate(sq, test::pt(3, 1))), "minkowski_additivity") ==
        CheckStatus::Pass);
  const auto nc = check_minkowski_additivity(sq, test::rectangle42());
  CHECK(status(nc, "minkowski_additivity") == CheckStatus::NotComparable);
  CHECK(nc.passed());
}

TEST_CASE("all checks pass on a random corpus") {
  const auto corpus = lattice_polygon_corpus(80, corpus_seed() + 6, 20);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& p = corpus[i];
    const auto g = run(p).caustic;
    auto r = check_balancing(g);
    r.merge(check_local_models(g));
    r.merge(check_noether(p, g));
    r.merge(check_times_lengths(p, g));
    r.merge(check_balancing(to_real(g)));
    r.merge(check_local_models(to_real(g)));
    CAPTURE(i);
    CHECK(r.passed());
  }
}

TEST_CASE("interior lattice points of edge cycles") {
  // reflexive square with edge vectors of length 2
  CHECK(interior_lattice_points({{2, 0}, {0, 2}, {-2, 0}, {0, -2}}) == 1);
  CHECK(interior_lattice_points({{1, 0}, {0, 1}, {-1, -1}}) == 0);
  std::vector<LatticeVector> v{{0, 1}, {-1, 0}, {1, 0}, {0, -1}};
  sort_by_angle(v);
  CHECK(v == std::vector<LatticeVector>{{1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}
