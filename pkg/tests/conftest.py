from __future__ import annotations

import numpy as np
import pytest

from ballclimb import build_cooccurrence_graph, enumerate_moves, from_tables, generate_adjacent_mnk


def make_index(f, r):
    return enumerate_moves(build_cooccurrence_graph(f), r, f)


def zero_landscape(n=4, d=2, k=2):
    objectives = [[((j, (j + 1) % n), [0, 0, 0, 0]) for j in range(n)] for _ in range(d)]
    return from_tables(n, 2, objectives, k=k)


def and_landscape():
    return from_tables(2, 2, [[((0, 1), [0, 0, 0, 1])]])


def crossing_landscape():
    """Two non-co-occurring variables with S_0 = (-1, 3) and S_1 = (3, -1) at x = 00."""
    return from_tables(
        2,
        4,
        [
            [((0,), [1, 0]), ((1,), [0, 3])],
            [((0,), [0, 3]), ((1,), [1, 0])],
        ],
    )


def random_solution(n, rng):
    return rng.integers(0, 2, size=n).tolist()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def small_instance():
    f = generate_adjacent_mnk(12, 2, 2, 100, seed=7)
    return f, make_index(f, 2)
