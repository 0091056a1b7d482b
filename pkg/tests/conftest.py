from __future__ import annotations

import pytest

from dpcut import build_graph


@pytest.fixture
def relay_graph():
    """Terminals 0 and 1 joined through three independent relay nodes by
    unit edges: minimum cut 3, and exactly 2**3 = 8 distinct minima (one
    per choice of which side each relay joins)."""
    edges = [(0, v, 1) for v in (2, 3, 4)] + [(1, v, 1) for v in (2, 3, 4)]
    return build_graph(5, edges, terminals=(0, 1))


@pytest.fixture
def star_graph():
    """Hub node 3 attached to terminals 0, 1, 2 with weights 1, 2, 3."""
    return build_graph(4, [(0, 3, 1), (1, 3, 2), (2, 3, 3)])


def multiway_instance(i: int):
    """Deterministic multiway test instance family: seeded random graph
    with the first k nodes as terminals, small enough for brute force."""
    from dpcut import random_graph

    n = 6 + i % 4  # 6..9
    k = 3 + i % 2  # 3 or 4
    g = random_graph(n, 0.55, max_weight=8, seed=1000 + i)
    return g, list(range(k))
