"""End-to-end acceptance suite.

Each test covers one numbered criterion and records a single pass/fail
line (replayed in the terminal summary).  The shared corpora are verified
once per session and reused across criteria.
"""

import multiprocessing
import time
from fractions import Fraction

import pytest
from conftest import record_acceptance

from matchbound.bounds import Affine, charging_average
from matchbound.cli import CampaignConfig, _verify_worker, run_campaign
from matchbound.geom import (
    convex_point_set,
    generate_point_set,
    read_point_set,
    write_point_set,
)
from matchbound.growth import growth_base_estimate
from matchbound.matchings import count_by_size
from matchbound.report import merge_check_maps

SEEDS = 50
JOBS = 8


def _corpus_texts(ns, convex_ns):
    texts = []
    for n in ns:
        for seed in range(SEEDS):
            texts.append(write_point_set(generate_point_set(n, seed)))
    for n in convex_ns:
        texts.append(write_point_set(convex_point_set(n)))
    return texts


def _verify_corpus(texts, method):
    work = [(t, method, 12, 7) for t in texts]
    with multiprocessing.Pool(JOBS) as pool:
        return pool.map(_verify_worker, work)


@pytest.fixture(scope="module")
def full_corpus():
    """(elapsed seconds, per-instance results) for n in 4..8 plus convex 4/6/8."""
    texts = _corpus_texts((4, 5, 6, 7, 8), (4, 6, 8))
    t0 = time.perf_counter()
    results = _verify_corpus(texts, "trapezoid")
    return time.perf_counter() - t0, results


@pytest.fixture(scope="module")
def full_merged(full_corpus):
    _, results = full_corpus
    return merge_check_maps([checks for _, checks in results])


@pytest.fixture(scope="module")
def n7_corpus_both_methods():
    """Per-instance results for the n <= 7 corpus under both visibility paths."""
    texts = _corpus_texts((4, 5, 6, 7), (4, 6))
    return {
        method: _verify_corpus(texts, method) for method in ("trapezoid", "oracle")
    }


def _check(number, name, ok, detail):
    record_acceptance(number, name, ok, detail)
    assert ok, f"criterion {number} ({name}): {detail}"


def test_criterion_01_classical_pointwise_bounds(full_corpus, full_merged):
    elapsed, results = full_corpus
    names = (
        "pointwise/k4_le_24",
        "pointwise/k5_le_48",
        "pointwise/one_sided_k3_le_6",
        "pointwise/isolated_bif_k4_le_10",
        "pointwise/isolated_bif_k5_le_17",
        "pointwise/good_k4_le_22",
        "pointwise/good_k5_le_41",
    )
    violations = sum(full_merged[n].violations for n in names)
    instances = sum(full_merged[n].instances for n in names)
    ok = violations == 0 and len(results) >= 5 * SEEDS + 3 and elapsed < 600
    _check(
        1,
        "classical-pointwise-bounds",
        ok,
        f"{violations} violations / {instances} comparisons over "
        f"{len(results)} point sets in {elapsed:.1f}s",
    )


def test_criterion_02_rank_inequalities(full_merged):
    names = ("rank/k4_ge_2n_minus_6s", "rank/k5_ge_3n_minus_7s")
    violations = sum(full_merged[n].violations for n in names)
    instances = sum(full_merged[n].instances for n in names)
    _check(
        2,
        "rank-inequalities",
        violations == 0,
        f"{violations} violations / {instances} matchings",
    )


def test_criterion_03_double_counting_sandwich(full_merged):
    names = (
        "double_counting/k4_lower",
        "double_counting/k4_upper_classic",
        "double_counting/k5_lower",
        "double_counting/k5_upper_classic",
    )
    violations = sum(full_merged[n].violations for n in names)
    instances = sum(full_merged[n].instances for n in names)
    _check(
        3,
        "double-counting-sandwich",
        violations == 0,
        f"{violations} violations / {instances} (instance, m) pairs",
    )


def test_criterion_04_improved_claim_probe(full_corpus):
    _, results = full_corpus
    complete = True
    witnesses_replayable = True
    total_violations = 0
    for digest, checks in results:
        for name in ("improved/k4_le_68_3", "improved/k5_le_89_2"):
            c = checks[name]
            # every instance reports exact margins for every m with matchings
            if c.instances == 0 or c.min_margin is None:
                complete = False
            total_violations += c.violations
            for w in c.witnesses:
                # a witness replays from its own point-set text and m tag
                try:
                    replayed = read_point_set(w.point_set)
                    assert replayed.digest() == digest
                    assert w.matching.startswith("m=")
                    Fraction(w.observed)
                    Fraction(w.bound)
                except (ValueError, AssertionError):
                    witnesses_replayable = False
    _check(
        4,
        "improved-claim-probe",
        complete and witnesses_replayable,
        f"margins reported for all {len(results)} instances; "
        f"{total_violations} violations, all witnesses replayable",
    )


def test_criterion_05_oracle_equivalence(n7_corpus_both_methods):
    trap = n7_corpus_both_methods["trapezoid"]
    oracle = n7_corpus_both_methods["oracle"]
    mismatches = sum(
        1 for (da, ca), (db, cb) in zip(trap, oracle) if da != db or ca != cb
    )
    _check(
        5,
        "oracle-equivalence",
        mismatches == 0 and len(trap) == len(oracle) > 0,
        f"{mismatches} differing instances out of {len(trap)} "
        "(all CheckResults compared)",
    )


def test_criterion_06_counting_oracles():
    perfect = {
        n: count_by_size(convex_point_set(n))[n // 2] for n in (4, 6, 8)
    }
    table4 = count_by_size(convex_point_set(4)).counts
    ok = perfect == {4: 2, 6: 5, 8: 14} and table4 == (1, 6, 2)
    _check(
        6,
        "counting-oracles",
        ok,
        f"convex perfect counts {perfect}, 4-point table {list(table4)}",
    )


def test_criterion_07_charging_averages():
    got = (
        charging_average(24, 22, Affine(Fraction(1), Fraction(0)), Affine(Fraction(2), Fraction(2))),
        charging_average(48, 41, Affine(Fraction(1), Fraction(0)), Affine(Fraction(1), Fraction(1))),
        charging_average(48, 41, Affine(Fraction(0), Fraction(1)), Affine(Fraction(0), Fraction(2))),
    )
    want = (Fraction(68, 3), Fraction(89, 2), Fraction(130, 3))
    _check(
        7,
        "charging-averages",
        got == want,
        f"got {', '.join(map(str, got))}; want {', '.join(map(str, want))}",
    )


def test_criterion_08_structural_checks(n7_corpus_both_methods):
    merged = merge_check_maps(
        [checks for _, checks in n7_corpus_both_methods["trapezoid"]]
    )
    names = (
        "structural/distinct_bifurcations_ge_k_plus_1",
        "structural/charging_le_2",
        "structural/unique_edge_reconstruction",
        "structural/bad_constellation_removal",
    )
    violations = sum(merged[n].violations for n in names)
    witnessed = all(
        merged[n].violations == 0 or merged[n].witnesses for n in names
    )
    gaps = merged["structural/separating_edge_exists"]
    _check(
        8,
        "structural-checks",
        violations == 0 and witnessed,
        f"{violations} violations over "
        f"{sum(merged[n].instances for n in names)} instances; "
        f"separate finding separating_edge_exists: "
        f"{gaps.violations}/{gaps.instances} witnessed",
    )


def test_criterion_09_growth_estimator():
    classic = growth_base_estimate(24, 48, 10000)
    again = growth_base_estimate(24, 48, 10000)
    improved = growth_base_estimate(Fraction(68, 3), Fraction(89, 2), 10000)
    deterministic = classic == again
    monotone = (
        growth_base_estimate(25, 48, 10000).base >= classic.base
        and growth_base_estimate(24, 50, 10000).base >= classic.base
    )
    in_window = 9.0 <= classic.base <= 11.0
    strictly_below = improved.base < classic.base
    _check(
        9,
        "growth-estimator",
        deterministic and monotone and in_window and strictly_below,
        f"(24,48) estimate {classic.base:.4f} vs window [9.0, 11.0]; "
        f"improved {improved.base:.4f}; deterministic={deterministic} "
        f"monotone={monotone} strictly_below={strictly_below}",
    )


def test_criterion_10_determinism(tmp_path):
    def campaign(jobs, name):
        out = tmp_path / name
        cfg = CampaignConfig(
            ns=(4, 5, 6, 7),
            seeds=tuple(range(10)),
            bound=1000,
            cap=12,
            structural_cap=7,
            out=out,
            formats=("text", "csv"),
            jobs=jobs,
            method="trapezoid",
        )
        assert run_campaign(cfg) == 0
        return (out / "report.txt").read_bytes(), (out / "report.csv").read_bytes()

    identical = campaign(1, "jobs1") == campaign(8, "jobs8")
    _check(
        10,
        "determinism",
        identical,
        "reports byte-identical for --jobs 1 vs --jobs 8",
    )
