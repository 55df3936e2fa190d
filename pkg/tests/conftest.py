from __future__ import annotations

import pytest

from whiskerres.corpus import example_graph
from whiskerres.graph import validate_graph

# lines collected by test_acceptance.py and echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def g_ex():
    return example_graph()[0]


@pytest.fixture
def pi_ex():
    return example_graph()[1]


@pytest.fixture
def k1():
    return validate_graph(["x"], [])


@pytest.fixture
def k2():
    return validate_graph(["a", "b"], [("a", "b")])


@pytest.fixture
def c4():
    return validate_graph(["a", "b", "c", "d"], [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])
