import itertools
import random

import pytest

from orient2.graph import MixedGraph, validate


def complete_graph(n: int) -> MixedGraph:
    return validate(n, itertools.combinations(range(n), 2), [])


def random_mixed(seed: int, max_n: int = 7, max_undirected: int = 14) -> MixedGraph:
    """Small random mixed graph with a bounded undirected-edge count."""
    rng = random.Random(seed)
    n = rng.randint(2, max_n)
    und = []
    arcs = []
    for u, v in itertools.combinations(range(n), 2):
        roll = rng.random()
        if roll < 0.35:
            und.append((u, v))
        elif roll < 0.65:
            arcs.append((u, v) if rng.random() < 0.5 else (v, u))
    rng.shuffle(und)
    return validate(n, und[:max_undirected], arcs)


@pytest.fixture
def mixed_triangle() -> MixedGraph:
    return validate(3, [(0, 1)], [(1, 2), (2, 0)])
