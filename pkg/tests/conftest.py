import pytest

from prodmachine import corpus
from prodmachine.transforms import prepare


@pytest.fixture
def g1():
    return corpus.g1()


@pytest.fixture
def g2():
    return corpus.g2()


@pytest.fixture
def p1(g1):
    return prepare(g1)[0]


@pytest.fixture
def p2(g2):
    return prepare(g2)[0]


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
