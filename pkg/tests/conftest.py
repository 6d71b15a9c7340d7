"""Shared fixtures plus a terminal section for the acceptance criteria.

Each acceptance test records one pass/fail line; the lines are replayed in
a dedicated section at the end of the run so they are visible regardless
of output capturing.
"""

ACCEPTANCE_LINES: list[str] = []


def record_acceptance(number: int, name: str, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE_LINES.append(f"criterion {number:02d} {name}: {status} ({detail})")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
