import pytest

_LINES: list[str] = []


@pytest.fixture
def report():
    """Print one verdict line per acceptance criterion and keep it for the summary."""

    def emit(number, ok: bool, detail: str) -> bool:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} | {detail}"
        print(line)
        _LINES.append(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if _LINES:
        terminalreporter.section("acceptance criteria")
        for line in _LINES:
            terminalreporter.write_line(line)
