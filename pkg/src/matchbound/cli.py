"""Command-line front end: gen, count, verify, growth, svg.

Exit statuses are a stable scripting contract: 0 success (verify: all
classical checks pass), 1 classical violation found, 2 usage or input
validation error, 3 I/O error, 4 estimator non-convergence.
"""

from __future__ import annotations

import argparse
import multiprocessing
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .errors import ConvergenceError, MatchboundError, UsageError
from .geom import (
    PointSet,
    convex_point_set,
    generate_point_set,
    read_point_set,
    write_point_set,
)
from .growth import growth_base_estimate
from .matchings import Matching, count_by_size, validate_matching
from .report import CheckResult, format_rational, merge_check_maps
from .svg import render_svg
from .verifier import (
    DEFAULT_STRUCTURAL_CAP,
    INTERPRETATIONS,
    classical_violations,
    verify_point_set,
)

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_NO_CONVERGENCE = 4

DEFAULT_CAMPAIGN_NS = (4, 5, 6, 7, 8)
DEFAULT_CAMPAIGN_SEEDS = 50
DEFAULT_CONVEX_NS = (4, 6, 8)


@dataclass(frozen=True)
class CampaignConfig:
    """One verification campaign: which instances, caps, outputs, parallelism."""

    ns: tuple[int, ...]
    seeds: tuple[int, ...]
    bound: int
    cap: int
    structural_cap: int
    out: Path
    formats: tuple[str, ...]
    jobs: int
    method: str
    convex_ns: tuple[int, ...] = DEFAULT_CONVEX_NS

    def __post_init__(self):
        if not self.seeds:
            raise UsageError("seed list must be nonempty")
        if self.cap > 12:
            raise UsageError("enumeration cap exceeds the hard limit 12")
        if self.structural_cap > 8:
            raise UsageError("structural cap exceeds the hard limit 8")


def _parse_ns(text: str) -> tuple[int, ...]:
    """'4..8' or '4,6,8' or '6'."""
    if ".." in text:
        lo, _, hi = text.partition("..")
        return tuple(range(int(lo), int(hi) + 1))
    return tuple(int(t) for t in text.split(","))


def _instances(cfg: CampaignConfig) -> list[tuple[str, str]]:
    """(digest, canonical text) for every campaign instance, digest-sorted."""
    seen: dict[str, str] = {}
    for n in cfg.ns:
        for seed in cfg.seeds:
            ps = generate_point_set(n, seed, bound=cfg.bound)
            seen[ps.digest()] = write_point_set(ps)
    for n in cfg.convex_ns:
        ps = convex_point_set(n)
        seen[ps.digest()] = write_point_set(ps)
    return sorted(seen.items())


def _verify_worker(args: tuple[str, str, int, int]) -> tuple[str, dict[str, CheckResult]]:
    text, method, cap, structural_cap = args
    ps = read_point_set(text)
    checks = verify_point_set(
        ps, method=method, cap=cap, structural_cap=structural_cap
    )
    return ps.digest(), checks


def _csv_lines(per_instance: list[tuple[str, dict[str, CheckResult]]]) -> list[str]:
    lines = ["digest,check,instances,violations,min_margin"]
    for digest, checks in per_instance:
        for name in sorted(checks):
            c = checks[name]
            margin = "" if c.min_margin is None else format_rational(c.min_margin)
            lines.append(f"{digest},{name},{c.instances},{c.violations},{margin}")
    return lines


def _text_report(
    cfg: CampaignConfig, merged: dict[str, CheckResult], n_instances: int
) -> str:
    lines = [
        "matchbound verification report",
        f"config ns={','.join(map(str, cfg.ns))} seeds={len(cfg.seeds)} "
        f"bound={cfg.bound} cap={cfg.cap} structural_cap={cfg.structural_cap} "
        f"method={cfg.method} convex={','.join(map(str, cfg.convex_ns))}",
        f"point_sets={n_instances}",
    ]
    for note in INTERPRETATIONS:
        lines.append(f"interpretation: {note}")
    lines.append("")
    lines.append("improved-claim summary (reported only; never affects exit status):")
    for name in sorted(merged):
        if name.startswith("improved/"):
            lines.extend(merged[name].to_lines())
    lines.append("")
    lines.append("checks:")
    for name in sorted(merged):
        lines.extend(merged[name].to_lines())
    lines.append("")
    total = classical_violations(merged)
    lines.append(f"classical_violations={total}")
    return "\n".join(lines) + "\n"


def run_campaign(cfg: CampaignConfig) -> int:
    instances = _instances(cfg)
    work = [
        (text, cfg.method, cfg.cap, cfg.structural_cap) for _, text in instances
    ]
    if cfg.jobs > 1 and len(work) > 1:
        with multiprocessing.Pool(cfg.jobs) as pool:
            results = pool.map(_verify_worker, work)
    else:
        results = [_verify_worker(w) for w in work]
    by_digest = dict(results)
    per_instance = [(d, by_digest[d]) for d, _ in instances]

    cfg.out.mkdir(parents=True, exist_ok=True)
    for digest, text in instances:
        (cfg.out / f"{digest}.pts").write_text(text)
    merged = merge_check_maps([checks for _, checks in per_instance])
    if "text" in cfg.formats:
        (cfg.out / "report.txt").write_text(
            _text_report(cfg, merged, len(instances))
        )
    if "csv" in cfg.formats:
        (cfg.out / "report.csv").write_text(
            "\n".join(_csv_lines(per_instance)) + "\n"
        )
    total = classical_violations(merged)
    print(f"point_sets={len(instances)} classical_violations={total}")
    return EXIT_OK if total == 0 else EXIT_VIOLATION


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="matchbound",
        description="Enumerate crossing-free matchings and verify insertion-sum bounds.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a random general-position point set")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--bound", type=int, default=1000)
    g.add_argument("--out", type=Path, default=None)

    c = sub.add_parser("count", help="count crossing-free matchings by size")
    c.add_argument("file", type=Path)
    c.add_argument("--cap", type=int, default=None)

    v = sub.add_parser("verify", help="run a verification campaign")
    v.add_argument("--n", default="4..8", help="range '4..8' or list '4,6,8'")
    v.add_argument("--seeds", type=int, default=DEFAULT_CAMPAIGN_SEEDS,
                   help="number of seeds per n")
    v.add_argument("--seed", type=int, default=0, help="base seed")
    v.add_argument("--bound", type=int, default=1000)
    v.add_argument("--cap", type=int, default=12)
    v.add_argument("--structural-cap", type=int, default=DEFAULT_STRUCTURAL_CAP)
    v.add_argument("--out", type=Path, default=Path("verify-out"))
    v.add_argument("--format", default="text,csv")
    v.add_argument("--jobs", type=int, default=os.cpu_count() or 1)
    v.add_argument("--method", choices=("trapezoid", "oracle"), default="trapezoid")
    v.add_argument("--no-convex", action="store_true",
                   help="skip the convex-position instances")

    gr = sub.add_parser("growth", help="estimate the recurrence growth base")
    gr.add_argument("--c4", default="24", help="rational, e.g. 24 or 68/3")
    gr.add_argument("--c5", default="48", help="rational, e.g. 48 or 89/2")
    gr.add_argument("--n", type=int, default=10000)

    s = sub.add_parser("svg", help="render a decomposition diagram")
    s.add_argument("file", type=Path)
    s.add_argument("--matching", default="", help="edges as 'u-w u-w ...'")
    s.add_argument("--out", type=Path, default=None)
    return ap


def _cmd_gen(args) -> int:
    ps = generate_point_set(args.n, args.seed, bound=args.bound)
    out = args.out or Path(f"ps-n{args.n}-seed{args.seed}.pts")
    out.write_text(write_point_set(ps))
    print(ps.digest())
    return EXIT_OK


def _cmd_count(args) -> int:
    ps = read_point_set(args.file.read_text())
    table = count_by_size(ps, cap=args.cap)
    print(table.to_csv_row())
    return EXIT_OK


def _cmd_verify(args) -> int:
    cfg = CampaignConfig(
        ns=_parse_ns(args.n),
        seeds=tuple(range(args.seed, args.seed + args.seeds)),
        bound=args.bound,
        cap=args.cap,
        structural_cap=args.structural_cap,
        out=args.out,
        formats=tuple(t.strip() for t in args.format.split(",") if t.strip()),
        jobs=max(1, args.jobs),
        method=args.method,
        convex_ns=() if args.no_convex else DEFAULT_CONVEX_NS,
    )
    return run_campaign(cfg)


def _cmd_growth(args) -> int:
    est = growth_base_estimate(Fraction(args.c4), Fraction(args.c5), args.n)
    print(
        f"estimator base={est.base:.6f} max_base={est.max_base:.6f} "
        f"strategy={est.strategy} c4={args.c4} c5={args.c5} n={args.n} "
        f"m0={est.m0} iterations={est.iterations}"
    )
    return EXIT_OK


def _cmd_svg(args) -> int:
    ps = read_point_set(args.file.read_text())
    M = Matching.from_text(args.matching)
    validate_matching(ps, M)
    text = render_svg(ps, M)
    if args.out is None:
        sys.stdout.write(text)
    else:
        args.out.write_text(text)
    return EXIT_OK


_COMMANDS = {
    "gen": _cmd_gen,
    "count": _cmd_count,
    "verify": _cmd_verify,
    "growth": _cmd_growth,
    "svg": _cmd_svg,
}


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (ValueError, ZeroDivisionError, MatchboundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
