"""Crossing-free matchings: representation, validation, exhaustive enumeration."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from . import _kernels as K
from .errors import CapExceededError, UsageError
from .geom import PointSet

DEFAULT_ENUMERATION_CAP = 12


def hard_cap(default: int = DEFAULT_ENUMERATION_CAP) -> int:
    """Enumeration cap; the MATCHBOUND_CAP env var may lower (never raise) it."""
    env = os.environ.get("MATCHBOUND_CAP")
    if env:
        try:
            return min(default, int(env))
        except ValueError:
            pass
    return default


@dataclass(frozen=True, order=True)
class Matching:
    """Canonical crossing-free matching: lexicographically sorted index pairs."""

    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]]) -> "Matching":
        canon = tuple(sorted((int(u), int(w)) for u, w in edges))
        for u, w in canon:
            if u >= w:
                raise UsageError(f"edge ({u}, {w}) must have u < w")
        return cls(canon)

    @property
    def m(self) -> int:
        return len(self.edges)

    def covers(self, p: int) -> bool:
        return any(p == u or p == w for u, w in self.edges)

    def edge_of(self, p: int) -> tuple[int, int] | None:
        for u, w in self.edges:
            if p == u or p == w:
                return (u, w)
        return None

    def to_text(self) -> str:
        """Witness serialization: 'u-w u-w ...' in canonical order."""
        return " ".join(f"{u}-{w}" for u, w in self.edges)

    @classmethod
    def from_text(cls, text: str) -> "Matching":
        edges = []
        for token in text.split():
            u, _, w = token.partition("-")
            edges.append((int(u), int(w)))
        return cls.from_edges(edges)


def is_crossing_free(ps: PointSet, edges: Iterable[Sequence[int]]) -> bool:
    """True iff the edge set is vertex-disjoint and free of proper crossings."""
    es = [(int(u), int(w)) for u, w in edges]
    seen: set[int] = set()
    for u, w in es:
        if not (0 <= u < ps.n and 0 <= w < ps.n):
            raise UsageError(f"edge ({u}, {w}) out of range for n={ps.n}")
        if u >= w:
            raise UsageError(f"edge ({u}, {w}) must have u < w")
        if u in seen or w in seen:
            return False
        seen.add(u)
        seen.add(w)
    xs, ys = ps.xs, ps.ys
    for i in range(len(es)):
        a, b = es[i]
        for j in range(i + 1, len(es)):
            c, d = es[j]
            if K.segments_properly_cross(
                xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]
            ):
                return False
    return True


def validate_matching(ps: PointSet, M: Matching) -> None:
    if not is_crossing_free(ps, M.edges):
        raise UsageError(f"invalid matching over point set: {M.to_text()!r}")


def enumerate_matchings(ps: PointSet, cap: int | None = None) -> Iterator[Matching]:
    """All crossing-free matchings of ps, in lexicographic canonical order.

    The empty matching comes first; each matching is emitted exactly once by
    extending with edges in strictly increasing lexicographic order.
    """
    limit = hard_cap() if cap is None else min(cap, hard_cap())
    if ps.n > limit:
        raise CapExceededError(
            f"n={ps.n} exceeds the enumeration cap {limit}; "
            "raise --cap only for deliberately long runs"
        )
    xs, ys = ps.xs, ps.ys
    n = ps.n
    candidates = [(u, w) for u in range(n) for w in range(u + 1, n)]
    ncand = len(candidates)
    crossing = [[False] * ncand for _ in range(ncand)]
    for i in range(ncand):
        a, b = candidates[i]
        for j in range(i + 1, ncand):
            c, d = candidates[j]
            if a in (c, d) or b in (c, d):
                continue
            if K.segments_properly_cross(
                xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]
            ):
                crossing[i][j] = crossing[j][i] = True

    chosen: list[int] = []
    covered = [False] * n

    def extend(start: int) -> Iterator[Matching]:
        yield Matching(tuple(candidates[i] for i in chosen))
        for i in range(start, ncand):
            u, w = candidates[i]
            if covered[u] or covered[w]:
                continue
            if any(crossing[i][j] for j in chosen):
                continue
            chosen.append(i)
            covered[u] = covered[w] = True
            yield from extend(i + 1)
            chosen.pop()
            covered[u] = covered[w] = False

    return extend(0)


@dataclass(frozen=True)
class CountTable:
    """Per-size matching counts Ma_0 .. Ma_floor(n/2)."""

    n: int
    counts: tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.counts)

    def __getitem__(self, m: int) -> int:
        return self.counts[m] if 0 <= m < len(self.counts) else 0

    def crossing_ignoring_bound(self, m: int) -> int:
        """C(n, 2m) * (2m-1)!!: all matchings of size m, crossings ignored."""
        if 2 * m > self.n:
            return 0
        dfac = math.factorial(2 * m) // (math.factorial(m) * 2 ** m)
        return math.comb(self.n, 2 * m) * dfac

    def to_csv_row(self) -> str:
        return ",".join(str(c) for c in self.counts)


def count_by_size(ps: PointSet, cap: int | None = None) -> CountTable:
    counts = [0] * (ps.n // 2 + 1)
    for M in enumerate_matchings(ps, cap=cap):
        counts[M.m] += 1
    return CountTable(ps.n, tuple(counts))


def isolated_vertices(ps: PointSet, M: Matching) -> tuple[int, ...]:
    """Indices not covered by M, in increasing (x) order; |result| = n - 2m."""
    covered = set()
    for u, w in M.edges:
        covered.add(u)
        covered.add(w)
    return tuple(i for i in range(ps.n) if i not in covered)
