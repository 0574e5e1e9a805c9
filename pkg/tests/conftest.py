import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

# Filled by test_acceptance; one line per criterion, shown after the run.
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
