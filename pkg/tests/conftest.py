"""Shared test plumbing: a registry so the acceptance suite can print
one verdict line per criterion in the terminal summary."""

import pytest

_acceptance_lines: list[str] = []


@pytest.fixture
def criterion_report():
    return _acceptance_lines.append


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
