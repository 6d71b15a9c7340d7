"""Check results, witnesses, and deterministic report serialization."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

WITNESS_CAP = 10


def format_rational(x) -> str:
    """Exact serialization: integers plain, other rationals as 'p/q'."""
    f = Fraction(x)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


@dataclass(frozen=True, order=True)
class Witness:
    """Minimal replayable description of one violated check instance."""

    point_set: str           # canonical point-set text
    matching: str            # canonical matching text, or 'm=K' for aggregates
    point: int | None
    side: str | None
    observed: str
    bound: str

    def to_line(self) -> str:
        pts = self.point_set.strip().replace("\n", ";")
        pt = "-" if self.point is None else str(self.point)
        side = self.side or "-"
        return (
            f"points=[{pts}] matching=[{self.matching}] point={pt} "
            f"side={side} observed={self.observed} bound={self.bound}"
        )


@dataclass
class CheckResult:
    """Aggregated outcome of one named check."""

    name: str
    instances: int = 0
    violations: int = 0
    witnesses: list[Witness] = field(default_factory=list)
    min_margin: Fraction | None = None

    def record(self, ok: bool, margin, witness: Witness | None = None) -> None:
        self.instances += 1
        if margin is not None:
            m = Fraction(margin)
            if self.min_margin is None or m < self.min_margin:
                self.min_margin = m
        if not ok:
            self.violations += 1
            if witness is not None and len(self.witnesses) < WITNESS_CAP:
                self.witnesses.append(witness)

    def merge(self, other: "CheckResult") -> None:
        assert self.name == other.name
        self.instances += other.instances
        self.violations += other.violations
        self.witnesses = sorted(set(self.witnesses + other.witnesses))[:WITNESS_CAP]
        margins = [m for m in (self.min_margin, other.min_margin) if m is not None]
        self.min_margin = min(margins) if margins else None

    def to_lines(self) -> list[str]:
        status = "pass" if self.violations == 0 else "VIOLATED"
        margin = "-" if self.min_margin is None else format_rational(self.min_margin)
        lines = [
            f"check={self.name} status={status} instances={self.instances} "
            f"violations={self.violations} min_margin={margin}"
        ]
        for w in self.witnesses:
            lines.append(f"  witness {w.to_line()}")
        return lines


def merge_check_maps(maps: list[dict[str, CheckResult]]) -> dict[str, CheckResult]:
    """Commutative merge of per-instance check maps, keyed and sorted by name."""
    out: dict[str, CheckResult] = {}
    for m in maps:
        for name in sorted(m):
            if name not in out:
                out[name] = CheckResult(name)
            out[name].merge(m[name])
    return dict(sorted(out.items()))
