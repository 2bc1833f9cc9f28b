import pytest

from holozeros.fixtures import FIXTURES, fixture
from holozeros.padic import PadicContext


@pytest.fixture
def ctx5():
    return PadicContext(5, 4)


@pytest.fixture(params=sorted(FIXTURES))
def any_fixture(request):
    return request.param


@pytest.fixture
def fib():
    return fixture("fibonacci")


@pytest.fixture
def interleaved():
    return fixture("interleaved")


ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report_line():
    def emit(number: int, ok: bool, detail: str):
        line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        return ok

    return emit


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion ")[1].split(":")[0])):
            terminalreporter.write_line(line)
