"""Command-line interface: subcommands, reports, exit codes, determinism."""

import pytest

from matchbound.cli import (
    EXIT_IO,
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VIOLATION,
    _parse_ns,
    main,
)
from matchbound.geom import convex_point_set, generate_point_set, write_point_set
from matchbound.svg import render_svg
from matchbound.matchings import Matching
from matchbound.verifier import INTERPRETATIONS


def _write(tmp_path, name, ps):
    f = tmp_path / name
    f.write_text(write_point_set(ps))
    return f


class TestParseNs:
    def test_range(self):
        assert _parse_ns("4..8") == (4, 5, 6, 7, 8)

    def test_list(self):
        assert _parse_ns("4,6,8") == (4, 6, 8)

    def test_single(self):
        assert _parse_ns("6") == (6,)


class TestGen:
    def test_deterministic_output(self, tmp_path, capsys):
        a = tmp_path / "a.pts"
        b = tmp_path / "b.pts"
        assert main(["gen", "--n", "6", "--seed", "3", "--out", str(a)]) == EXIT_OK
        assert main(["gen", "--n", "6", "--seed", "3", "--out", str(b)]) == EXIT_OK
        assert a.read_bytes() == b.read_bytes()
        d1, d2 = capsys.readouterr().out.split()
        assert d1 == d2 and len(d1) == 16

    def test_bad_arguments(self, tmp_path):
        assert main(["gen", "--n", "0", "--out", str(tmp_path / "x.pts")]) == EXIT_USAGE


class TestCount:
    def test_known_tables(self, tmp_path, capsys):
        f4 = _write(tmp_path, "c4.pts", convex_point_set(4))
        assert main(["count", str(f4)]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "1,6,2"
        f6 = _write(tmp_path, "c6.pts", convex_point_set(6))
        assert main(["count", str(f6)]) == EXIT_OK
        assert capsys.readouterr().out.strip().endswith(",5")

    def test_missing_file_is_io_error(self, tmp_path):
        assert main(["count", str(tmp_path / "nope.pts")]) == EXIT_IO

    def test_degenerate_input_is_usage_error(self, tmp_path):
        f = tmp_path / "bad.pts"
        f.write_text("0 0\n1 1\n2 2\n")
        assert main(["count", str(f)]) == EXIT_USAGE

    def test_cap_exceeded_is_usage_error(self, tmp_path):
        f = _write(tmp_path, "c8.pts", convex_point_set(8))
        assert main(["count", str(f), "--cap", "7"]) == EXIT_USAGE


class TestVerify:
    def _run(self, tmp_path, name, *extra):
        out = tmp_path / name
        code = main(
            [
                "verify",
                "--n",
                "4..5",
                "--seeds",
                "3",
                "--no-convex",
                "--out",
                str(out),
                *extra,
            ]
        )
        return code, out

    def test_clean_campaign(self, tmp_path, capsys):
        code, out = self._run(tmp_path, "v1", "--jobs", "1")
        assert code == EXIT_OK
        assert "classical_violations=0" in capsys.readouterr().out
        report = (out / "report.txt").read_text()
        assert "classical_violations=0" in report
        for note in INTERPRETATIONS:
            assert f"interpretation: {note}" in report
        csv = (out / "report.csv").read_text().splitlines()
        assert csv[0] == "digest,check,instances,violations,min_margin"
        assert len(csv) > 1
        # every campaign instance is written next to the reports
        assert len(list(out.glob("*.pts"))) == 6

    def test_jobs_byte_identical(self, tmp_path):
        _, a = self._run(tmp_path, "j1", "--jobs", "1")
        _, b = self._run(tmp_path, "j2", "--jobs", "2")
        assert (a / "report.txt").read_bytes() == (b / "report.txt").read_bytes()
        assert (a / "report.csv").read_bytes() == (b / "report.csv").read_bytes()

    def test_method_byte_identical(self, tmp_path):
        _, a = self._run(tmp_path, "mt", "--method", "trapezoid")
        _, b = self._run(tmp_path, "mo", "--method", "oracle")
        assert (a / "report.csv").read_bytes() == (b / "report.csv").read_bytes()

    def test_cap_limits_enforced(self, tmp_path):
        assert (
            main(["verify", "--n", "4", "--seeds", "1", "--cap", "13",
                  "--out", str(tmp_path / "x")])
            == EXIT_USAGE
        )
        assert (
            main(["verify", "--n", "4", "--seeds", "1", "--structural-cap", "9",
                  "--out", str(tmp_path / "y")])
            == EXIT_USAGE
        )

    def test_empty_seed_list_rejected(self, tmp_path):
        assert (
            main(["verify", "--n", "4", "--seeds", "0", "--out", str(tmp_path / "z")])
            == EXIT_USAGE
        )


class TestGrowth:
    def test_defaults_print_strategy(self, capsys):
        assert main(["growth"]) == EXIT_OK
        out = capsys.readouterr().out
        assert "estimator base=" in out
        assert "strategy=capped-telescoped-fixpoint-v2" in out
        assert "c4=24 c5=48 n=10000" in out

    def test_repeat_identical(self, capsys):
        main(["growth", "--n", "2000"])
        a = capsys.readouterr().out
        main(["growth", "--n", "2000"])
        assert capsys.readouterr().out == a

    def test_rational_constants_accepted(self, capsys):
        assert main(["growth", "--c4", "68/3", "--c5", "89/2", "--n", "2000"]) == EXIT_OK
        assert "c4=68/3" in capsys.readouterr().out

    def test_bad_n_is_usage_error(self):
        assert main(["growth", "--n", "5"]) == EXIT_USAGE


class TestSvg:
    def test_deterministic_bytes(self, tmp_path):
        f = _write(tmp_path, "p.pts", generate_point_set(6, 0))
        a, b = tmp_path / "a.svg", tmp_path / "b.svg"
        for out in (a, b):
            assert (
                main(["svg", str(f), "--matching", "0-1 2-3", "--out", str(out)])
                == EXIT_OK
            )
        assert a.read_bytes() == b.read_bytes()
        text = a.read_text()
        assert text.startswith("<?xml")
        assert "<svg" in text and "circle" in text

    def test_invalid_matching_rejected(self, tmp_path):
        f = _write(tmp_path, "p.pts", convex_point_set(4))
        assert main(["svg", str(f), "--matching", "0-2 1-3"]) == EXIT_USAGE

    def test_render_marks_isolated_differently(self):
        ps = convex_point_set(4)
        text = render_svg(ps, Matching.from_edges([(0, 1)]))
        # matched points filled blue, isolated points hollow with red stroke
        assert 'fill="#1f4e8c"' in text
        assert 'stroke="#c2452d"' in text
        assert 'class="unbounded-wall"' in text


def test_exit_code_contract():
    assert (EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_IO) == (0, 1, 2, 3)
