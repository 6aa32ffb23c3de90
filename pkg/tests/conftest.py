import pytest

from folcheck.parse import parse_polynomial


def P(text):
    return parse_polynomial(text)


@pytest.fixture
def poly():
    return P


_RESULTS: dict = {}


class _Record:
    def __init__(self, number, title):
        self.number, self.title, self.detail = number, title, ""

    def __enter__(self):
        return self

    def __exit__(self, exc_type, exc, tb):
        status = "PASS" if exc_type is None else "FAIL"
        line = f"criterion {self.number}: {status}  {self.title}"
        if self.detail:
            line += f"  [{self.detail}]"
        if exc is not None and str(exc):
            line += f"  ({str(exc).splitlines()[0]})"
        _RESULTS[self.number] = line
        return False


def record_criterion(number, title):
    return _Record(number, title)


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_RESULTS):
        terminalreporter.write_line(_RESULTS[k])
