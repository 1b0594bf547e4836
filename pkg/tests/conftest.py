"""Shared test plumbing: surfaces the acceptance summary lines.

The acceptance tests register one PASS/FAIL line each; printing them from
a terminal-summary hook keeps them visible even though pytest captures
output during the run itself.
"""

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.ensure_newline()
    terminalreporter.section("acceptance criteria", sep="=")
    for line in ACCEPTANCE_LINES:
        terminalreporter.line(line)
