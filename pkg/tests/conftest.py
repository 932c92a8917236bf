from contextlib import contextmanager

import pytest

_ACCEPTANCE_LINES: list[tuple[int, str]] = []


@pytest.fixture
def criterion():
    """Record a PASS/FAIL summary line for one acceptance criterion."""

    @contextmanager
    def _criterion(number: int, title: str):
        try:
            yield
        except BaseException:
            _ACCEPTANCE_LINES.append((number, f"FAIL  criterion {number}: {title}"))
            raise
        else:
            _ACCEPTANCE_LINES.append((number, f"PASS  criterion {number}: {title}"))

    return _criterion


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for _, line in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(line)
