"""Insertion profiles, weighted sums, constellations, and reconstruction checks.

For an isolated point p in a matching M, the insertion profile counts, for
every compatible partner q, the rank p acquires after inserting edge (p, q).
Counts are split by the side the edge emanates to (l left, r right); the
weighted sums sum_{i<=k} (k-i) * c_i are the quantities all the verified
bounds speak about (supported orders k = 3, 4, 5).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Literal

from . import _kernels as K
from .errors import PreconditionError, UsageError
from .geom import PointSet
from .matchings import Matching, isolated_vertices
from .trapezoids import Side, Trapezoidation, _method_code

SUPPORTED_ORDERS = (3, 4, 5)


@dataclass(frozen=True)
class InsertionProfile:
    """Rank-indexed insertion counts for one isolated point in one matching."""

    point: int
    h: tuple[int, ...]
    l: tuple[int, ...]
    r: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.h)


def insertion_profile(
    p: int, ps: PointSet, M: Matching, method: str = "trapezoid"
) -> InsertionProfile:
    if M.covers(p):
        raise PreconditionError(f"point {p} is matched; profiles exist for isolated points")
    h, lv, rv = K.insertion_vectors(
        ps.xs, ps.ys, list(M.edges), p, _method_code(method)
    )
    return InsertionProfile(p, tuple(h), tuple(lv), tuple(rv))


def weighted_sum(
    profile: InsertionProfile, k: int, side: Literal["left", "right", "both"] = "both"
) -> int:
    """sum_{i=0}^{k} (k - i) * c_i for c = h, l, or r."""
    if k not in SUPPORTED_ORDERS:
        raise UsageError(f"unsupported weight order k={k}; supported: {SUPPORTED_ORDERS}")
    if side == "both":
        c = profile.h
    elif side == "left":
        c = profile.l
    elif side == "right":
        c = profile.r
    else:
        raise UsageError(f"unknown side {side!r}")
    return sum((k - i) * c[i] for i in range(min(k, len(c) - 1) + 1))


def one_sided_counts(profile: InsertionProfile, side: Side) -> tuple[int, ...]:
    return profile.l if side is Side.LEFT else profile.r


class ConstellationClass(enum.Enum):
    ISOLATED_BIFURCATION = "isolated-bifurcation"
    GOOD = "good"
    BAD = "bad"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class Constellation:
    """One-sided local structure at an isolated point."""

    point: int
    side: Side
    bifurcation: int | None
    bifurcation_edge: tuple[int, int] | None
    members: frozenset[int]
    targets: frozenset[int]  # members that are valid one-sided insertion targets
    l_counts: tuple[int, ...]

    def weighted(self, k: int) -> int:
        if k not in SUPPORTED_ORDERS:
            raise UsageError(f"unsupported weight order k={k}")
        return sum((k - i) * self.l_counts[i] for i in range(min(k, len(self.l_counts) - 1) + 1))


def _insertion_targets(p: int, ps: PointSet, M: Matching, side: Side) -> list[int]:
    """Isolated q on the given side of p with (p, q) compatible with M."""
    out = []
    for q in isolated_vertices(ps, M):
        if q == p:
            continue
        if (q < p) != (side is Side.LEFT):
            continue
        a, b = (p, q) if p < q else (q, p)
        if K.edge_is_compatible(ps.xs, ps.ys, list(M.edges), a, b):
            out.append(q)
    return out


def extract_constellation(
    p: int,
    side: Side,
    ps: PointSet,
    M: Matching,
    trap: Trapezoidation | None = None,
    method: str = "trapezoid",
) -> Constellation:
    """Bifurcation structure plus the isolated points feeding the one-sided counts.

    Members are the valid insertion targets on the side, together with every
    isolated vertex vertically visible from some candidate inserted edge
    (p, q); exactly these points can contribute to the one-sided rank counts.
    """
    if M.covers(p):
        raise PreconditionError(f"point {p} is matched")
    if trap is None:
        trap = Trapezoidation(ps, M)
    bif = trap.bifurcation_point(p, side)
    bif_edge = None if bif is None else M.edge_of(bif)

    iso = set(isolated_vertices(ps, M))
    targets = _insertion_targets(p, ps, M, side)
    members: set[int] = set(targets)
    mcode = _method_code(method)
    for q in targets:
        a, b = (p, q) if p < q else (q, p)
        aug = list(M.edges) + [(a, b)]
        ei = len(aug) - 1
        for v in iso:
            if v == p or v == q or v in members:
                continue
            if K.visible_from_edge(ps.xs, ps.ys, aug, v, ei, mcode):
                members.add(v)

    prof = insertion_profile(p, ps, M, method=method)
    return Constellation(
        point=p,
        side=side,
        bifurcation=bif,
        bifurcation_edge=bif_edge,
        members=frozenset(members),
        targets=frozenset(targets),
        l_counts=one_sided_counts(prof, side),
    )


def classify_constellation(
    c: Constellation, ps: PointSet, M: Matching
) -> ConstellationClass:
    """Good iff every member lies horizontally between the bifurcation edge's ends."""
    if c.bifurcation is None:
        return ConstellationClass.UNBOUNDED
    if c.bifurcation_edge is None:
        return ConstellationClass.ISOLATED_BIFURCATION
    u, w = c.bifurcation_edge
    lo, hi = ps.xs[u], ps.xs[w]
    for v in c.members:
        if not (lo < ps.xs[v] < hi):
            return ConstellationClass.BAD
    return ConstellationClass.GOOD


def is_good_point(
    p: int, ps: PointSet, M: Matching, trap: Trapezoidation | None = None
) -> bool:
    """True iff a left or right bifurcation point of p exists and is unmatched."""
    if M.covers(p):
        raise PreconditionError(f"point {p} is matched")
    if trap is None:
        trap = Trapezoidation(ps, M)
    for side in (Side.LEFT, Side.RIGHT):
        b = trap.bifurcation_point(p, side)
        if b is not None and not M.covers(b):
            return True
    return False


@dataclass(frozen=True)
class ReconstructionOutcome:
    """Result of an edge-removal / rule-based-reinsertion round trip."""

    removed_edge: tuple[int, int]
    candidates: int
    unique: bool
    reconstructed: tuple[int, int] | None = None
    observed_index: int | None = None


def _walk_isolated_prefix(
    trap: Trapezoidation,
    start: int,
    side: Side,
    stop_at: int | None,
    exclude: frozenset[int] = frozenset(),
) -> list[int]:
    """Isolated wall points seen from start on the side, up to stop_at.

    The stop point itself is included when it is isolated: the removed
    edge's endpoint may coincide with the bifurcation point, in which case
    it joins the isolated set exactly there.
    """
    out = []
    for q in trap.walk(start, side):
        if not trap.M.covers(q) and q not in exclude:
            out.append(q)
        if stop_at is not None and q == stop_at:
            break
    return out


def check_unique_edge_reconstruction(
    a: int, b: int, ps: PointSet, M: Matching
) -> ReconstructionOutcome:
    """Shared-bifurcation pair: remove the edge below a, reconstruct it by rule.

    Rule: after removal, the left endpoint is the highest isolated vertex
    other than a and b seen walking left from a toward the shared left
    bifurcation point (inclusive); symmetric on the right.  Both positions
    a and b are given, so neither competes as an endpoint.  candidates
    counts the rule-consistent endpoint pairs (ties in the height maximum);
    unique iff exactly one.
    """
    for p in (a, b):
        if M.covers(p):
            raise PreconditionError(f"point {p} is matched")
    if ps.ys[a] <= ps.ys[b]:
        raise PreconditionError("a must lie above b")
    trap = Trapezoidation(ps, M)
    shared = {}
    for side in (Side.LEFT, Side.RIGHT):
        ba = trap.bifurcation_point(a, side)
        bb = trap.bifurcation_point(b, side)
        if ba is None or ba != bb:
            raise PreconditionError(
                f"a and b must share the {side.value} bifurcation point"
            )
        shared[side] = ba
    edges = list(M.edges)
    ei = K.first_edge_below(ps.xs, ps.ys, edges, a)
    if ei < 0 or K.first_edge_above(ps.xs, ps.ys, edges, b) < 0:
        raise PreconditionError("a and b must be separated by at least one edge")
    removed = M.edges[ei]

    reduced = Matching.from_edges(e for e in M.edges if e != removed)
    rtrap = Trapezoidation(ps, reduced)
    picks = {}
    cand = 1
    for side in (Side.LEFT, Side.RIGHT):
        seen = _walk_isolated_prefix(
            rtrap, a, side, shared[side], exclude=frozenset({a, b})
        )
        if not seen:
            picks[side] = None
            cand = 0
            continue
        top = max(ps.ys[v] for v in seen)
        best = [v for v in seen if ps.ys[v] == top]
        picks[side] = best[0]
        cand *= len(best)
    reconstructed = None
    if picks.get(Side.LEFT) is not None and picks.get(Side.RIGHT) is not None:
        reconstructed = (picks[Side.LEFT], picks[Side.RIGHT])
    return ReconstructionOutcome(
        removed_edge=removed,
        candidates=cand,
        unique=cand == 1,
        reconstructed=reconstructed,
    )


def check_bad_constellation_removal(
    p: int, side: Side, ps: PointSet, M: Matching
) -> ReconstructionOutcome:
    """Bad constellation: remove the bifurcation edge, relocate its far endpoint.

    After removal the far endpoint q' must reappear as the i-th closest
    isolated vertex seen from the bifurcation point q through trapezoids;
    the observed index i is reported, and the identification counts as
    unique iff q' is found on the walk at all.
    """
    c = extract_constellation(p, side, ps, M)
    cls = classify_constellation(c, ps, M)
    if cls is not ConstellationClass.BAD:
        raise PreconditionError(f"constellation of ({p}, {side.value}) is {cls.value}, not bad")
    q_edge = c.bifurcation_edge
    assert q_edge is not None
    q = c.bifurcation
    qp = q_edge[0] if q_edge[1] == q else q_edge[1]

    reduced = Matching.from_edges(e for e in M.edges if e != q_edge)
    rtrap = Trapezoidation(ps, reduced)
    direction = Side.RIGHT if qp > q else Side.LEFT
    # retrace the removed edge's sightline from q toward q'
    seen = [
        v for v in rtrap.walk(q, direction, line=q_edge) if not reduced.covers(v)
    ]
    if qp in seen:
        idx = seen.index(qp) + 1
        return ReconstructionOutcome(
            removed_edge=q_edge,
            candidates=1,
            unique=True,
            reconstructed=q_edge,
            observed_index=idx,
        )
    return ReconstructionOutcome(
        removed_edge=q_edge, candidates=0, unique=False, reconstructed=None
    )
