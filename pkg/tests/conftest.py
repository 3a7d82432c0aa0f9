import pytest

from argabs.abstraction import parse_partition
from argabs.fixtures import fixture_path, fixture_text, jack_joe, three_cycle


@pytest.fixture
def jj():
    return jack_joe()


@pytest.fixture
def cycle3():
    return three_cycle()


@pytest.fixture
def jj_part(jj):
    return parse_partition(fixture_text("jack_joe.part"), jj)


@pytest.fixture
def data_dir():
    return fixture_path("")


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
