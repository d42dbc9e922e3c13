import pytest

_CRITERIA = {}


@pytest.fixture
def criterion():
    """Record a named acceptance criterion; the terminal summary prints one line each."""

    def record(name: str, ok: bool, detail: str = ""):
        _CRITERIA[name] = (ok, detail)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA):
        ok, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
