"""Shared pytest wiring: surface the acceptance-criterion verdict lines.

The acceptance tests record one line per headline criterion; printing them
from inside a test would be swallowed by output capture, so they are
replayed as a terminal-summary section instead.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
