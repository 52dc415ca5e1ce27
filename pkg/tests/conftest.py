"""Shared fixtures: the small Cayley graphs the tests keep coming back to."""

import pytest

from tpcodes.cayley import build_cayley
from tpcodes.groups import make_group


def cayley(spec, conn):
    group = make_group(spec)
    return build_cayley(group, group.subset(conn))


@pytest.fixture
def make_cayley():
    return cayley


@pytest.fixture
def z18_graph():
    """Cay(Z18, {1, 9, 17}), code <3>."""
    return cayley("cyclic:18", [1, 9, 17])


@pytest.fixture
def z18_code(z18_graph):
    return z18_graph.group.subset([0, 3, 6, 9, 12, 15])


@pytest.fixture
def z20_graph():
    """Cay(Z20, {1, 2, 10, 18, 19}), code <5>."""
    return cayley("cyclic:20", [1, 2, 10, 18, 19])


@pytest.fixture
def z20_code(z20_graph):
    return z20_graph.group.subset([0, 5, 10, 15])


@pytest.fixture
def q4_graph():
    return cayley("elem2:4", [1, 2, 4, 8])


@pytest.fixture
def q4_code(q4_graph):
    # 0000, 1110, 0001, 1111
    return q4_graph.group.subset([0, 7, 8, 15])


@pytest.fixture
def k33_graph():
    """Cay(S3, transpositions), which is K_{3,3}."""
    return cayley("sym:3", [1, 2, 5])
