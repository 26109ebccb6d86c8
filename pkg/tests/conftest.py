"""Shared test plumbing: surfaces the acceptance PASS/FAIL lines.

pytest captures stdout at the file-descriptor level, so the acceptance
tests record their one-line verdicts here and a terminal-summary hook
prints them after the run.
"""

ACCEPTANCE_LINES = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance checks")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
