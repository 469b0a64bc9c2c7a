import pytest

_LINES = []


@pytest.fixture
def report():
    """Record one acceptance line; printed together at the end of the run."""

    def emit(tag, passed, detail):
        status = "INFO" if passed is None else ("PASS" if passed else "FAIL")
        line = f"{status:<4}  {tag}: {detail}"
        _LINES.append(line)
        print(line)

    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
