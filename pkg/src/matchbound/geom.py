"""Exact planar geometry core: points, predicates, validation, generation, I/O.

Coordinates are integers capped at |x|, |y| <= 2**20, which keeps every
3-point determinant exact in 64-bit-sized intermediates.  Point sets are
stored sorted by strictly increasing x, so index comparisons express the
left/right vocabulary used throughout the package.
"""

from __future__ import annotations

import enum
import hashlib
import random
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from . import _kernels as K
from .errors import DegenerateInputError, GenerationError, UsageError

COORD_BOUND = 1 << 20

GENERATION_RETRY_LIMIT = 10 ** 6


class Point(NamedTuple):
    x: int
    y: int


class Turn(enum.Enum):
    COUNTERCLOCKWISE = 1
    CLOCKWISE = -1


def orientation(p: Point, q: Point, r: Point) -> Turn:
    """Exact turn direction of the triple (p, q, r).

    Raises DegenerateInputError for a collinear triple; valid point sets
    never contain one.
    """
    s = K.orientation_sign(p[0], p[1], q[0], q[1], r[0], r[1])
    if s == 0:
        raise DegenerateInputError(f"collinear triple: {p}, {q}, {r}")
    return Turn.COUNTERCLOCKWISE if s > 0 else Turn.CLOCKWISE


def segments_properly_cross(a: Point, b: Point, c: Point, d: Point) -> bool:
    """True iff the open segments ab and cd share an interior point."""
    if len({tuple(a), tuple(b)} & {tuple(c), tuple(d)}) > 0:
        raise UsageError("segments share an endpoint")
    return K.segments_properly_cross(
        a[0], a[1], b[0], b[1], c[0], c[1], d[0], d[1]
    )


@dataclass(frozen=True)
class Violation:
    kind: str            # "collinear" | "duplicate_x" | "coordinate_bound"
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}{self.indices}"


def validate_general_position(points: Sequence[Point]) -> list[Violation]:
    """All general-position violations of a candidate point sequence.

    Indices refer to the input order.  An empty list means the sequence is
    acceptable as a PointSet.
    """
    pts = [Point(int(x), int(y)) for x, y in points]
    out: list[Violation] = []
    for i, p in enumerate(pts):
        if abs(p.x) > COORD_BOUND or abs(p.y) > COORD_BOUND:
            out.append(Violation("coordinate_bound", (i,)))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            if pts[i].x == pts[j].x:
                out.append(Violation("duplicate_x", (i, j)))
    for i in range(len(pts)):
        for j in range(i + 1, len(pts)):
            for k in range(j + 1, len(pts)):
                a, b, c = pts[i], pts[j], pts[k]
                if K.orientation_sign(a.x, a.y, b.x, b.y, c.x, c.y) == 0:
                    out.append(Violation("collinear", (i, j, k)))
    return out


class PointSet:
    """Immutable x-sorted integer point set in general position."""

    __slots__ = ("points", "xs", "ys")

    def __init__(self, points: Iterable[Point]):
        pts = sorted(Point(int(x), int(y)) for x, y in points)
        if not pts:
            raise DegenerateInputError("point set must contain at least one point")
        violations = validate_general_position(pts)
        if violations:
            raise DegenerateInputError(
                "not in general position: "
                + ", ".join(str(v) for v in violations[:5])
            )
        object.__setattr__(self, "points", tuple(pts))
        object.__setattr__(self, "xs", tuple(p.x for p in pts))
        object.__setattr__(self, "ys", tuple(p.y for p in pts))

    def __setattr__(self, name, value):
        raise AttributeError("PointSet is immutable")

    @property
    def n(self) -> int:
        return len(self.points)

    def __len__(self) -> int:
        return len(self.points)

    def __getitem__(self, i: int) -> Point:
        return self.points[i]

    def __iter__(self):
        return iter(self.points)

    def __eq__(self, other) -> bool:
        return isinstance(other, PointSet) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"PointSet({list(self.points)!r})"

    def digest(self) -> str:
        """Content digest of the canonical text form."""
        return hashlib.sha256(write_point_set(self).encode()).hexdigest()[:16]


def generate_point_set(n: int, seed: int, bound: int = 1000) -> PointSet:
    """Uniform random general-position point set, deterministic in (n, seed, bound).

    Points are drawn one at a time from the integer grid [-bound, bound]^2
    and redrawn while they violate general position against the points
    already kept.  Fails after GENERATION_RETRY_LIMIT redraws.
    """
    if n < 1:
        raise UsageError("n must be >= 1")
    if bound < 1 or bound > COORD_BOUND:
        raise UsageError(f"bound must be in [1, {COORD_BOUND}]")
    rng = random.Random(seed)
    kept: list[Point] = []
    redraws = 0
    while len(kept) < n:
        cand = Point(rng.randint(-bound, bound), rng.randint(-bound, bound))
        ok = all(cand.x != p.x for p in kept)
        if ok:
            for i in range(len(kept)):
                for j in range(i + 1, len(kept)):
                    a, b = kept[i], kept[j]
                    if K.orientation_sign(a.x, a.y, b.x, b.y, cand.x, cand.y) == 0:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            kept.append(cand)
        else:
            redraws += 1
            if redraws > GENERATION_RETRY_LIMIT:
                raise GenerationError(
                    f"exceeded {GENERATION_RETRY_LIMIT} redraws for "
                    f"n={n}, bound={bound}"
                )
    return PointSet(kept)


def convex_point_set(n: int) -> PointSet:
    """n points in convex position on an integer parabola."""
    if n < 1:
        raise UsageError("n must be >= 1")
    half = n // 2
    return PointSet(Point(i - half, (i - half) ** 2) for i in range(n))


def perturb_point_set(points: Sequence[Point], seed: int = 0) -> PointSet:
    """Explicit jitter helper: add uniform {-1,0,1}^2 noise, then re-validate.

    Never applied implicitly anywhere; degenerate inputs to other operations
    are rejected, not repaired.
    """
    rng = random.Random(seed)
    moved = [
        Point(p[0] + rng.randint(-1, 1), p[1] + rng.randint(-1, 1))
        for p in points
    ]
    return PointSet(moved)


def read_point_set(text: str) -> PointSet:
    """Parse the one-point-per-line text format into a PointSet.

    Raises DegenerateInputError naming 1-based line numbers for parse and
    general-position failures.
    """
    raw: list[Point] = []
    lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise DegenerateInputError(
                f"line {lineno}: expected two integers, got {line!r}"
            )
        try:
            raw.append(Point(int(parts[0]), int(parts[1])))
        except ValueError:
            raise DegenerateInputError(
                f"line {lineno}: expected two integers, got {line!r}"
            ) from None
        lines.append(lineno)
    violations = validate_general_position(raw)
    if violations:
        v = violations[0]
        where = ", ".join(str(lines[i]) for i in v.indices)
        raise DegenerateInputError(f"{v.kind} violation at lines {where}")
    return PointSet(raw)


def write_point_set(ps: PointSet) -> str:
    """Canonical text form: x-sorted, one 'x y' pair per line, LF endings."""
    return "".join(f"{p.x} {p.y}\n" for p in ps.points)
