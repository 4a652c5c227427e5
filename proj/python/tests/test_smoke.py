# SPDX-License-Identifier: Apache-2.0
import math

import pytest

import tropical_caustics as tc

SQUARE = [(0, 0), (2, 0), (2, 2), (0, 2)]
TRIANGLE = [(0, 0), (3, 0), (0, 2)]


def test_square_caustic():
    g = tc.caustic(SQUARE)
    assert g["exact"]
    assert len(g["edges"]) == 4
    assert g["final"]["kind"] == "point"
    assert g["t_final"] == "1"


def test_triangle_weights_and_verify():
    g = tc.caustic(TRIANGLE)
    assert sorted(e["weight"] for e in g["edges"]) == [1, 2, 3]
    assert tc.verify(g, TRIANGLE)["passed"]


def test_tampered_graph_fails():
    g = tc.caustic(TRIANGLE)
    for e in g["edges"]:
        if e["weight"] == 2:
            e["weight"] = 5
    assert not tc.verify(g)["passed"]


def test_propagate_rational_times():
    assert tc.propagate(TRIANGLE, "1") == {"kind": "point", "p": ["1", "1"]}
    half = tc.propagate(SQUARE, "1/2")
    assert half["vertices"][0] == ["1/2", "1/2"]
    assert tc.propagate(TRIANGLE, 2)["empty"] is True
    assert tc.interior_hull_step(TRIANGLE) == tc.propagate(TRIANGLE, 1)


def test_bad_input_raises():
    with pytest.raises(ValueError):
        tc.caustic([(0, 0), (2, 0), (1, 1), (2, 2), (0, 2)])
    with pytest.raises(ValueError):
        tc.propagate(SQUARE, "1/x")


def test_disc_series():
    s, n = tc.disc_area_series(100)
    assert n > 0
    assert 0 < s < 4 - math.pi


def test_smooth_domains():
    phi = (1 + 5 ** 0.5) / 2
    assert tc.critical_time("ellipse", phi, (1, 0), (0, 1)) == pytest.approx(1 + phi - math.sqrt(1 + phi * phi))
    g = tc.smooth("ellipse", phi)
    assert g["final"]["kind"] == "segment"
    assert g["t_final"] == pytest.approx(1.0)
    assert tc.verify(g)["passed"]


def test_approx_basis_check():
    pts = tc.approx("staircase1", 1.0, 1.0)
    assert (2.0, 3.0) in pts
    with pytest.raises(ValueError):
        tc.approx("staircase1", 1.0, 1.0, basis=((2, 0), (0, 1)))


def test_reconstruct_round_trip():
    out = tc.reconstruct(tc.caustic(TRIANGLE))
    assert out["polygon"]["convex"]
    assert out["realizability"]["verdict"] == "realizable"
    assert tc.round_trip(TRIANGLE)
