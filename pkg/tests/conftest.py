import pytest

from helpers import ACCEPTANCE_LINES, field


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for _, line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def f7():
    return field(7)


@pytest.fixture(scope="session")
def f101():
    return field(101)


@pytest.fixture(scope="session")
def f1009():
    return field(1009)


@pytest.fixture(scope="session")
def f10007():
    return field(10007)
