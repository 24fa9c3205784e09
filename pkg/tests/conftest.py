import pytest

from invgalois.builders import bounded_rank_example, group_regular_example, order28_example

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def order28():
    return order28_example()


@pytest.fixture(scope="session")
def bounded32():
    return bounded_rank_example(3, 2)


@pytest.fixture(scope="session")
def z2():
    return group_regular_example("Z2")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
