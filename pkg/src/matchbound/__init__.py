"""Exact enumeration and bound verification for crossing-free matchings.

The package enumerates crossing-free matchings of planar integer point
sets in general position, computes rank/insertion/bifurcation structure
with exact arithmetic, and empirically verifies a family of insertion-sum
and double-counting bounds at desk scale with minimal witnesses.
"""

from ._kernels import BACKEND
from .geom import (
    COORD_BOUND,
    Point,
    PointSet,
    convex_point_set,
    generate_point_set,
    read_point_set,
    write_point_set,
)
from .matchings import CountTable, Matching, count_by_size, enumerate_matchings
from .trapezoids import Side, Trapezoidation, rank, rank_profile
from .verifier import BOUNDS, BoundSet, verify_point_set

__all__ = [
    "BACKEND",
    "BOUNDS",
    "BoundSet",
    "COORD_BOUND",
    "CountTable",
    "Matching",
    "Point",
    "PointSet",
    "Side",
    "Trapezoidation",
    "convex_point_set",
    "count_by_size",
    "enumerate_matchings",
    "generate_point_set",
    "rank",
    "rank_profile",
    "read_point_set",
    "verify_point_set",
    "write_point_set",
]

__version__ = "0.1.0"
