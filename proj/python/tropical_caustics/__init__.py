# SPDX-License-Identifier: Apache-2.0
"""Tropical caustics of convex domains.

Polygons are given as vertex lists; coordinates may be ints or "p/q" strings.
Exact results come back as dicts with rationals as "p/q" strings.
"""

import json

from . import _core
from ._core import EngineError, GeometryError, ParseError, ReconstructError

__all__ = [
    "EngineError",
    "GeometryError",
    "ParseError",
    "ReconstructError",
    "approx",
    "caustic",
    "critical_time",
    "disc_area_series",
    "interior_hull_step",
    "propagate",
    "reconstruct",
    "round_trip",
    "smooth",
    "verify",
]


def _poly(vertices):
    if isinstance(vertices, dict):
        return json.dumps(vertices)
    return json.dumps({"vertices": [list(v) for v in vertices]})


def caustic(vertices, events=False):
    return json.loads(_core.caustic(_poly(vertices), events))


def propagate(vertices, t):
    return json.loads(_core.propagate(_poly(vertices), str(t)))


def interior_hull_step(vertices):
    return json.loads(_core.interior_hull_step(_poly(vertices)))


def verify(graph, vertices=None):
    poly = "" if vertices is None else _poly(vertices)
    return json.loads(_core.verify(json.dumps(graph), poly))


def round_trip(vertices):
    return _core.round_trip(_poly(vertices))


def disc_area_series(max_den):
    return _core.disc_area_series(max_den)


def critical_time(domain, param, l1, l2):
    return _core.critical_time(domain, param, tuple(l1), tuple(l2))


def smooth(domain, param=1.0, eps=1e-3, depth=10):
    return json.loads(_core.smooth(domain, param, eps, depth))


def approx(domain, h, t, basis=((1, 0), (0, 1)), r=1.0):
    return _core.approx(domain, h, t, tuple(basis[0]), tuple(basis[1]), r)


def reconstruct(graph):
    return json.loads(_core.reconstruct(json.dumps(graph)))
