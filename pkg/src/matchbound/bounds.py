"""Exact rational bound combinators: charging averages and recurrence steps."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import UsageError


@dataclass(frozen=True)
class Affine:
    """k -> a*k + b with nonnegative integer-valued coefficients."""

    a: Fraction
    b: Fraction

    def __call__(self, k: int) -> Fraction:
        return self.a * k + self.b


def charging_average(
    high: Fraction, good: Fraction, high_per_k: Affine, good_per_k: Affine
) -> Fraction:
    """Supremum over k >= 1 of the weighted average of two per-group bounds.

    The average ((high * H(k) + good * G(k)) / (H(k) + G(k))) is monotone in
    k, so its supremum is either the k -> infinity limit
    (a*high + c*good) / (a + c) or the value at k = 1; the larger of the two
    is returned exactly.
    """
    high, good = Fraction(high), Fraction(good)
    hk, gk = high_per_k, good_per_k
    if hk.a < 0 or hk.b < 0 or gk.a < 0 or gk.b < 0:
        raise UsageError("per-k coefficients must be nonnegative")
    den1 = hk(1) + gk(1)
    if den1 == 0:
        raise UsageError("per-k counts sum to zero at k=1")
    at1 = (high * hk(1) + good * gk(1)) / den1
    if hk.a + gk.a == 0:
        return at1
    limit = (hk.a * high + gk.a * good) / (hk.a + gk.a)
    return max(at1, limit)


def recurrence_step_bound(
    n: int, m: int, c4: Fraction, c5: Fraction
) -> Fraction | None:
    """Best available ratio bounding Ma_m / Ma_{m-1}, or None when unbounded.

    With s = n - 2m, the candidates are c4*(s+2)/(2n-6s) and
    c5*(s+2)/(3n-7s), each available only where its denominator is positive.
    """
    c4, c5 = Fraction(c4), Fraction(c5)
    if not (1 <= m <= n // 2):
        raise UsageError(f"m={m} outside [1, {n // 2}]")
    if c4 <= 0 or c5 <= 0:
        raise UsageError("constants must be positive")
    s = n - 2 * m
    candidates = []
    if 2 * n - 6 * s > 0:
        candidates.append(c4 * (s + 2) / (2 * n - 6 * s))
    if 3 * n - 7 * s > 0:
        candidates.append(c5 * (s + 2) / (3 * n - 7 * s))
    return min(candidates) if candidates else None
