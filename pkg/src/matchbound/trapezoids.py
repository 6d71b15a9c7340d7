"""Vertical decomposition of (point set, matching): cells, walls, rank, walks.

A wall is the maximal vertical segment through a point, clipped by the first
matching edge strictly above and below.  Cells are maximal wall- and
edge-free regions; every bounded cell side is a wall through a point, so
each cell carries a left and right wall-defining point (or None when
unbounded).

Rank and visibility come in two interchangeable flavours:

* ``method="trapezoid"`` -- wall-clipping semantics (a point sees an edge
  iff the edge clips the point's wall), the default fast path;
* ``method="oracle"`` -- brute-force open-segment intersection tests,
  kept as the independent cross-check.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from . import _kernels as K
from .errors import PreconditionError, UsageError
from .geom import PointSet
from .matchings import Matching

_METHODS = {"trapezoid": K.METHOD_CLIP, "oracle": K.METHOD_SCAN}


def _method_code(method: str) -> int:
    try:
        return _METHODS[method]
    except KeyError:
        raise UsageError(f"unknown rank method {method!r}") from None


class Side(enum.Enum):
    LEFT = "left"
    RIGHT = "right"


def vertically_visible(
    q: int, e: tuple[int, int], ps: PointSet, M: Matching, method: str = "trapezoid"
) -> bool:
    """True iff point q is vertically visible from the interior of edge e."""
    if q in e:
        raise UsageError(f"point {q} is an endpoint of edge {e}")
    try:
        ei = M.edges.index(tuple(e))
    except ValueError:
        raise UsageError(f"edge {e} not in matching") from None
    return K.visible_from_edge(ps.xs, ps.ys, list(M.edges), q, ei, _method_code(method))


def rank(p: int, ps: PointSet, M: Matching, method: str = "trapezoid") -> int:
    """Rank of p: 0 if unmatched, else visible isolated-or-same-side-endpoint count."""
    return K.rank_of_point(ps.xs, ps.ys, list(M.edges), p, _method_code(method))


@dataclass(frozen=True)
class RankProfile:
    """Per-point ranks d and the histogram v with v[i] = #{p : d(p) = i}."""

    d: tuple[int, ...]
    v: tuple[int, ...]

    def weighted_deficiency(self, k: int) -> int:
        """sum_{i<=k} (k - i) * v_i."""
        return sum((k - i) * self.v[i] for i in range(min(k, len(self.v) - 1) + 1))


def rank_profile(ps: PointSet, M: Matching, method: str = "trapezoid") -> RankProfile:
    d = tuple(K.all_ranks(ps.xs, ps.ys, list(M.edges), _method_code(method)))
    v = [0] * (ps.n + 1)
    for r in d:
        v[r] += 1
    return RankProfile(d, tuple(v))


def first_edge_below_point(ps: PointSet, M: Matching, p: int) -> tuple[int, int] | None:
    """The first edge hit by the downward vertical ray from p, if any."""
    i = K.first_edge_below(ps.xs, ps.ys, list(M.edges), p)
    return M.edges[i] if i >= 0 else None


def first_edge_above_point(ps: PointSet, M: Matching, p: int) -> tuple[int, int] | None:
    i = K.first_edge_above(ps.xs, ps.ys, list(M.edges), p)
    return M.edges[i] if i >= 0 else None


@dataclass(frozen=True)
class Trapezoid:
    """One cell: top/bottom edge indices (None = unbounded) and wall points."""

    bottom: int | None
    top: int | None
    left: int | None
    right: int | None
    slabs: tuple[int, ...]


class Trapezoidation:
    """Vertical decomposition of (ps, M) with wall adjacency.

    Slab j spans (x_{j-1}, x_j); slab 0 and slab n are the unbounded ends.
    The wall at the boundary between slab j and slab j+1 passes through
    point j.
    """

    def __init__(self, ps: PointSet, M: Matching):
        self.ps = ps
        self.M = M
        self._build()

    def _edge_y(self, ei: int, x: Fraction) -> Fraction:
        u, w = self.M.edges[ei]
        xs, ys = self.ps.xs, self.ps.ys
        return Fraction(ys[u]) + Fraction(ys[w] - ys[u], xs[w] - xs[u]) * (x - xs[u])

    def _build(self) -> None:
        ps, M = self.ps, self.M
        n = ps.n
        edges = list(M.edges)
        xs = ps.xs

        # wall gap at each point: first edge strictly below / above, or None
        self.wall_gap: list[tuple[int | None, int | None]] = []
        for p in range(n):
            fb = K.first_edge_below(ps.xs, ps.ys, edges, p)
            fa = K.first_edge_above(ps.xs, ps.ys, edges, p)
            self.wall_gap.append((fb if fb >= 0 else None, fa if fa >= 0 else None))

        # regions per slab: (bottom, top) edge pairs between y-sorted active edges
        slab_regions: list[list[tuple[int | None, int | None]]] = []
        for j in range(n + 1):
            active = [i for i, (u, w) in enumerate(edges) if u < j <= w]
            if active:
                mid = Fraction(xs[j - 1] + xs[j], 2)
                active.sort(key=lambda i: self._edge_y(i, mid))
            bounds: list[int | None] = [None, *active, None]
            slab_regions.append(
                [(bounds[r], bounds[r + 1]) for r in range(len(bounds) - 1)]
            )

        # union-find over (slab, region pair); merge across unblocked boundaries
        parent: dict[tuple[int, int | None, int | None], tuple] = {}

        def find(k):
            while parent[k] != k:
                parent[k] = parent[parent[k]]
                k = parent[k]
            return k

        for j in range(n + 1):
            for b, t in slab_regions[j]:
                parent[(j, b, t)] = (j, b, t)
        for j in range(n):
            blocked = self.wall_gap[j]  # wall through point j at x_j
            right = set(slab_regions[j + 1])
            for b, t in slab_regions[j]:
                if (b, t) == blocked or (b, t) not in right:
                    continue
                ra, rb = find((j, b, t)), find((j + 1, b, t))
                if ra != rb:
                    parent[ra] = rb

        groups: dict[tuple, list[tuple[int, int | None, int | None]]] = {}
        for k in parent:
            groups.setdefault(find(k), []).append(k)

        cells: list[Trapezoid] = []
        for members in groups.values():
            slabs = tuple(sorted(j for j, _, _ in members))
            b, t = members[0][1], members[0][2]
            left = slabs[0] - 1 if slabs[0] > 0 else None
            right_pt = slabs[-1] if slabs[-1] < n else None
            cells.append(Trapezoid(b, t, left, right_pt, slabs))
        cells.sort(key=lambda c: (c.slabs[0], -1 if c.bottom is None else c.bottom))
        self.cells: tuple[Trapezoid, ...] = tuple(cells)

        self._by_left: dict[int, list[Trapezoid]] = {}
        self._by_right: dict[int, list[Trapezoid]] = {}
        for c in self.cells:
            if c.left is not None:
                self._by_left.setdefault(c.left, []).append(c)
            if c.right is not None:
                self._by_right.setdefault(c.right, []).append(c)

    # -- traversal ---------------------------------------------------------

    def _interval_at(self, cell: Trapezoid, x: int) -> tuple[Fraction | None, Fraction | None]:
        fx = Fraction(x)
        lo = None if cell.bottom is None else self._edge_y(cell.bottom, fx)
        hi = None if cell.top is None else self._edge_y(cell.top, fx)
        return lo, hi

    def _clamp(self, rep: Fraction, cell: Trapezoid, x: int) -> Fraction:
        lo, hi = self._interval_at(cell, x)
        if (lo is None or rep > lo) and (hi is None or rep < hi):
            return rep
        if lo is None and hi is None:
            return rep
        if lo is None:
            return hi - 1
        if hi is None:
            return lo + 1
        return (lo + hi) / 2

    def _neighbors(self, q: int, side: Side) -> list[Trapezoid]:
        if side is Side.LEFT:
            return self._by_right.get(q, [])
        return self._by_left.get(q, [])

    def _pick(self, cands: list[Trapezoid], q: int, rep: Fraction) -> Trapezoid:
        if len(cands) == 1:
            return cands[0]
        # split by the edge incident to q; above-cell has it as bottom
        yq = Fraction(self.ps.ys[q])
        above = [c for c in cands if c.bottom is not None and q in self.M.edges[c.bottom]]
        below = [c for c in cands if c.top is not None and q in self.M.edges[c.top]]
        if rep > yq and above:
            return above[0]
        if below:
            return below[0]
        return cands[0]

    def _cell_containing(
        self, cands: list[Trapezoid], x: int, rep: Fraction
    ) -> Trapezoid:
        for c in cands:
            lo, hi = self._interval_at(c, x)
            if (lo is None or rep > lo) and (hi is None or rep < hi):
                return c
        return cands[0]

    def walk(
        self, p: int, side: Side, line: tuple[int, int] | None = None
    ) -> Iterator[int]:
        """Wall-defining points crossed when walking from p's wall to one side.

        With ``line`` (a pair of point indices), the walk follows the height
        of that supporting line instead of carrying p's own height: at every
        wall crossing the representative is re-evaluated on the line, then
        clamped into the entered cell.  Used to retrace the sightline of a
        removed edge.
        """
        if self.M.covers(p):
            raise PreconditionError(f"point {p} is matched; walks start at isolated points")
        xs, ys = self.ps.xs, self.ps.ys

        def line_y(x: int) -> Fraction:
            u, w = line
            return Fraction(ys[u]) + Fraction(ys[w] - ys[u], xs[w] - xs[u]) * (
                x - xs[u]
            )

        cands = self._neighbors(p, side)
        if not cands:
            return
        rep = Fraction(ys[p]) if line is None else line_y(xs[p])
        cur = self._cell_containing(cands, xs[p], rep)
        while True:
            q = cur.left if side is Side.LEFT else cur.right
            if q is None:
                return
            yield q
            nxt = self._neighbors(q, side)
            if not nxt:
                return
            if line is not None:
                rep = line_y(xs[q])
            cur = self._pick(nxt, q, rep)
            rep = self._clamp(rep, cur, self.ps.xs[q])

    def sees_walk(self, p: int, side: Side) -> tuple[int, ...]:
        return tuple(self.walk(p, side))

    def bifurcation_point(self, p: int, side: Side) -> int | None:
        return next(self.walk(p, side), None)


def build_trapezoidation(ps: PointSet, M: Matching) -> Trapezoidation:
    return Trapezoidation(ps, M)


def bifurcation_point(p: int, side: Side, ps: PointSet, M: Matching) -> int | None:
    """First wall-defining point an isolated p reaches on the given side."""
    return Trapezoidation(ps, M).bifurcation_point(p, side)


def sees_walk(p: int, side: Side, ps: PointSet, M: Matching) -> tuple[int, ...]:
    """Full sequence of wall-defining points reached from p on the given side."""
    return Trapezoidation(ps, M).sees_walk(p, side)
