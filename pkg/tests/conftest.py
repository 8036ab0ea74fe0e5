from __future__ import annotations

import random

import pytest

from reeb import make_graph


@pytest.fixture
def y_tree():
    # minima at 0 and 1 merged at 2, topped by 3
    return make_graph({0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0},
                      [(0, 0, 2), (1, 1, 2), (2, 2, 3)])


@pytest.fixture
def loop():
    return make_graph({0: 0.0, 1: 1.0}, [(0, 0, 1), (1, 0, 1)])


@pytest.fixture
def double_loop():
    # two cycles sharing a middle arc; values equal node ids
    return make_graph({3: 3.0, 4: 4.0, 5: 5.0, 6: 6.0, 8: 8.0, 9: 9.0},
                      [(0, 3, 4), (1, 4, 8), (2, 8, 6), (3, 6, 3),
                       (4, 6, 5), (5, 5, 9), (6, 9, 4)])


@pytest.fixture
def fig_graph():
    # two minima, an ordinary merge saddle, and a double loop above it
    return make_graph(
        {1: 1.0, 2: 2.0, 3: 3.0, 4: 4.0, 5: 5.0, 6: 6.0,
         8: 8.0, 9: 9.0, 10: 10.0, 11: 11.0},
        [(0, 1, 3), (1, 2, 5), (2, 3, 4), (3, 3, 6), (4, 4, 8), (5, 4, 9),
         (6, 5, 6), (7, 5, 9), (8, 6, 8), (9, 8, 10), (10, 9, 11)])


@pytest.fixture
def rng():
    return random.Random(20240817)


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: full acceptance criteria")
