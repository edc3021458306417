"""Shared test plumbing: per-criterion verdict lines for the acceptance run.

test_acceptance registers one verdict per criterion; they are printed
after the run, outside output capture, so `pytest -v` always shows one
"[criterion N] PASS/FAIL" line per executed criterion.
"""

criterion_results = {}


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    for n in sorted(criterion_results):
        terminalreporter.write_line(f"[criterion {n}] {criterion_results[n]}")
