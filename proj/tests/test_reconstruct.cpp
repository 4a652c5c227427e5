// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "support.hpp"
#include "tc/corpus.hpp"
#include "tc/engine.hpp"
#include "tc/reconstruct.hpp"

using namespace tc;

namespace {

std::vector<Rational> lengths(std::initializer_list<long> v) {
  std::vector<Rational> out;
  for (long x : v) out.push_back(Rational(x));
  return out;
}

}  // namespace

TEST_CASE("branched final segment tree") {
  const auto rep = realizability_check(branched_segment_example(lengths({3, 4, 4, 4, 2, 2, 2})));
  CHECK(rep.equalities == "l1=l2=l3=l4+l5=l4+l6");
  CHECK(rep.equalities_hold);
  const auto sides = rep.nontrivial_sides();
  REQUIRE(sides.size() == 1);
  CHECK(sides[0]->text == "l3+l4-2l5>=0");
  CHECK(sides[0]->value == 2);
  CHECK(rep.verdict == Verdict::Realizable);
  CHECK(rep.convex);
}

TEST_CASE("forbidden lengths give a non-convex domain") {
  const auto rep = realizability_check(branched_segment_example(lengths({3, 4, 4, 4, 1, 3, 3})));
  CHECK(rep.verdict == Verdict::Violated);
  CHECK(rep.equalities_hold);
  const auto sides = rep.nontrivial_sides();
  REQUIRE(sides.size() == 1);
  CHECK(sides[0]->value == -1);
  CHECK_FALSE(sides[0]->satisfied);
  CHECK_FALSE(rep.convex);
  CHECK_FALSE(is_convex_cycle(rep.polygon));
}

TEST_CASE("equality boundary and unequal paths") {
  // l3 + l4 - 2 l5 = 0 is allowed but degenerate
  auto rep = realizability_check(branched_segment_example(lengths({3, 12, 12, 12, 4, 8, 8})));
  CHECK(rep.equalities_hold);
  CHECK(rep.verdict == Verdict::Boundary);
  rep = realizability_check(branched_segment_example(lengths({3, 4, 5, 4, 1, 3, 3})));
  CHECK_FALSE(rep.equalities_hold);
  CHECK(rep.verdict == Verdict::Violated);
}

TEST_CASE("domains from engine caustics") {
  for (const auto& p : {test::square2(), test::triangle32(), test::rectangle42(), test::triangle21()}) {
    const auto dom = reconstruct_domain(run(p).caustic);
    CHECK(dom.convex);
    CHECK(RationalPolygon::from_vertices(dom.vertices) == p);
    const auto a = extract_abstract(run(p).caustic);
    CHECK(realizability_check(a).verdict != Verdict::Violated);
    CHECK(round_trip_check(p).passed());
  }
}

TEST_CASE("perturbed lengths break the equalities") {
  auto a = extract_abstract(run(test::triangle32()).caustic);
  a.edges[0].len += 1;
  CHECK_FALSE(realizability_check(a).equalities_hold);
}

TEST_CASE("malformed trees are rejected") {
  auto a = branched_segment_example(lengths({3, 4, 4, 4, 1, 3, 3}));
  a.edges.push_back({"x", "B", "A", Rational(1), 1});  // cycle
  CHECK_THROWS_AS(realizability_check(a), ReconstructError);
  auto b = branched_segment_example(lengths({3, 4, 4, 4, 1, 3, 3}));
  b.final_edge = "missing";
  CHECK_THROWS_AS(realizability_check(b), ReconstructError);
}

TEST_CASE("round trip on a random corpus") {
  const auto corpus = lattice_polygon_corpus(60, corpus_seed() + 10, 20);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CAPTURE(i);
    CHECK(round_trip_check(corpus[i]).passed());
  }
}

TEST_CASE("convex cycles") {
  using P = std::vector<RationalPoint>;
  CHECK(is_convex_cycle(P{test::pt(0, 0), test::pt(1, 0), test::pt(2, 0), test::pt(2, 2), test::pt(0, 2)}));
  CHECK_FALSE(is_convex_cycle(P{test::pt(0, 0), test::pt(0, 2), test::pt(2, 2), test::pt(2, 0)}));
  CHECK_FALSE(is_convex_cycle(P{test::pt(0, 0), test::pt(2, 0), test::pt(1, 1), test::pt(2, 2), test::pt(0, 2)}));
}
