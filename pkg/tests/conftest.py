import contextlib

import pytest

_CRITERIA: dict[int, tuple[str, str]] = {}


@pytest.fixture
def criterion():
    """``with criterion(k, label):`` records a pass/fail line for the summary."""

    @contextlib.contextmanager
    def record(k: int, label: str):
        try:
            yield
        except BaseException:
            _CRITERIA[k] = ("FAIL", label)
            raise
        _CRITERIA[k] = ("PASS", label)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        status, label = _CRITERIA[k]
        terminalreporter.write_line(f"criterion {k}: {status}  {label}")
