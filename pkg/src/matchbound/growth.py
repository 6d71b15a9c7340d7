"""Numeric growth-base estimator for the matching-count recurrence.

This is a documented heuristic, not a closed-form solution.  Strategy
(version tag below): a matching of size m covers exactly 2m points, so
Ma_m <= C(n, 2m) * B^(2m) where B is the perfect-matching growth base
being estimated.  log Ma_m is capped at every m by both that ansatz and
the crossing-ignoring count C(n, 2m) * (2m-1)!!, and chained forward by
the recurrence step bounds wherever a step is available; the estimate is
the self-consistent fixpoint of B = exp(log Ma_{n/2} / n).  The running
maximum of log Ma_m / n over all m is exposed as a diagnostic.

The two hard contracts are determinism and monotonicity in (c4, c5).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .bounds import recurrence_step_bound
from .errors import ConvergenceError, UsageError

STRATEGY_TAG = "capped-telescoped-fixpoint-v2"

MAX_ITERATIONS = 1000
TOLERANCE = 1e-13


def _log_comb(n: int, k: int) -> float:
    return math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)


def _log_double_factorial_odd(m: int) -> float:
    """log((2m-1)!!) via (2m)! / (2^m m!)."""
    return math.lgamma(2 * m + 1) - m * math.log(2) - math.lgamma(m + 1)


@dataclass(frozen=True)
class GrowthEstimate:
    base: float           # self-consistent perfect-matching base
    max_base: float       # diagnostic: exp(max_m log Ma_m / n)
    iterations: int
    m0: int               # first size with an available recurrence step
    strategy: str = STRATEGY_TAG


def growth_base_estimate(c4, c5, n: int) -> GrowthEstimate:
    """Estimate the exponential base implied by the recurrence constants.

    Requires n >= 1000 and even.  Monotone nondecreasing in c4 and in c5.
    """
    c4, c5 = Fraction(c4), Fraction(c5)
    if c4 <= 0 or c5 <= 0:
        raise UsageError("constants must be positive")
    if n < 1000 or n % 2:
        raise UsageError("n must be even and >= 1000")

    half = n // 2
    log_steps: dict[int, float] = {}
    m0 = None
    for m in range(1, half + 1):
        step = recurrence_step_bound(n, m, c4, c5)
        if step is None:
            continue
        if m0 is None:
            m0 = m
        log_steps[m] = math.log(step.numerator) - math.log(step.denominator)
    if m0 is None:
        raise ConvergenceError("no bounded recurrence step exists")

    log_comb = [_log_comb(n, 2 * m) for m in range(half + 1)]
    log_df = [log_comb[m] + _log_double_factorial_odd(m) for m in range(half + 1)]

    log_b = log_df[m0] / n  # generous start; the fixpoint loop only shrinks it
    for iteration in range(1, MAX_ITERATIONS + 1):
        cur = min(log_df[m0], log_comb[m0] + 2 * m0 * log_b)
        best = cur
        for m in range(m0 + 1, half + 1):
            cur = min(cur + log_steps[m], log_df[m], log_comb[m] + 2 * m * log_b)
            if cur > best:
                best = cur
        new_log_b = cur / n  # log Ma_{n/2} / n
        if abs(new_log_b - log_b) < TOLERANCE:
            return GrowthEstimate(
                base=math.exp(new_log_b),
                max_base=math.exp(best / n),
                iterations=iteration,
                m0=m0,
            )
        log_b = new_log_b
    raise ConvergenceError(
        f"growth-base fixpoint did not converge in {MAX_ITERATIONS} iterations"
    )
