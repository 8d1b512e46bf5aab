from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pathsteiner.generate import random_upath_graph, rng_for
from pathsteiner.graph import Graph
from pathsteiner.treemodel import TreeModel

# derandomized so that repeated runs explore the same examples
settings.register_profile(
    "repo",
    derandomize=True,
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@st.composite
def graphs(draw, n_min: int = 0, n_max: int = 7) -> Graph:
    n = draw(st.integers(n_min, n_max))
    pairs = list(combinations(range(n), 2))
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph(n, frozenset(e for e, keep in zip(pairs, mask) if keep))


@st.composite
def connected_graphs(draw, n_min: int = 1, n_max: int = 7) -> Graph:
    g = draw(graphs(n_min, n_max))
    # chain components together so the result is connected
    comps = g.components()
    extra = {(min(a[0], b[0]), max(a[0], b[0])) for a, b in zip(comps, comps[1:])}
    return Graph(g.n, g.edges | extra)


@st.composite
def upath_instances(draw, n_lo: int = 3, n_hi: int = 10, max_diameter=None):
    """(graph, model) drawn from a seeded random path model."""
    seed = draw(st.integers(0, 10**6))
    rng = rng_for(seed, "upath-strategy")
    while True:
        got = random_upath_graph(
            rng, rng.randint(n_lo, n_hi), rng.randint(1, 7), max_diameter=max_diameter
        )
        if got is not None:
            return got


# K_{1,3}: center c=0, leaves a=1, b=2, d=3 on the host path t0 - t1 - t2
K13_PATHS = ({0, 1, 2}, {0}, {2}, {1})


@pytest.fixture
def k13():
    g = Graph.star(3)
    model = TreeModel.build(3, [(0, 1), (1, 2)], K13_PATHS)
    return g, model
