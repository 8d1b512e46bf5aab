"""Random and exhaustive instance generators.

All randomness comes from a ``random.Random`` (Mersenne Twister MT19937)
seeded with the user's integer seed; nothing reads global random state.
"""

from __future__ import annotations

import random
from itertools import combinations
from typing import Iterator

from .graph import Graph, diameter
from .oracle import isomorphic
from .treemodel import TreeModel, search_model


def rng_for(seed: int, *salt) -> random.Random:
    """Independent stream per (seed, salt...) so sub-sweeps do not interfere."""
    return random.Random(repr((seed,) + salt))


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, frozenset(e for e in combinations(range(n), 2) if rng.random() < p))


def random_tree(rng: random.Random, t: int) -> Graph:
    """Random recursive tree: node i attaches to a uniform earlier node."""
    return Graph(t, frozenset((rng.randrange(i), i) for i in range(1, t)))


def random_path_model(rng: random.Random, n_vertices: int, n_nodes: int) -> TreeModel:
    host = random_tree(rng, n_nodes)
    paths = []
    for _ in range(n_vertices):
        a, b = rng.randrange(n_nodes), rng.randrange(n_nodes)
        paths.append(frozenset(host.shortest_path(a, b)))
    return TreeModel(host, tuple(paths))


def random_upath_graph(
    rng: random.Random,
    n_vertices: int,
    n_nodes: int,
    max_diameter: float | None = None,
    tries: int = 200,
) -> tuple[Graph, TreeModel] | None:
    """A connected undirected path graph drawn from a random path model."""
    for _ in range(tries):
        model = random_path_model(rng, n_vertices, n_nodes)
        g = model.realized_graph()
        if not g.is_connected():
            continue
        if max_diameter is not None and diameter(g) > max_diameter:
            continue
        return g, model
    return None


def double_edge_swap(rng: random.Random, g: Graph, swaps: int = 3, tries: int = 100) -> Graph:
    """Degree-preserving rewiring: ab, cd -> ac, bd when the new edges are absent."""
    edges = set(g.edges)
    done = 0
    for _ in range(tries):
        if done >= swaps or len(edges) < 2:
            break
        (a, b), (c, d) = rng.sample(sorted(edges), 2)
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4:
            continue
        new1, new2 = tuple(sorted((a, c))), tuple(sorted((b, d)))
        if new1 in edges or new2 in edges:
            continue
        edges -= {(a, b) if a < b else (b, a), (c, d) if c < d else (d, c)}
        edges |= {new1, new2}
        done += 1
    return Graph(g.n, frozenset(edges))


def random_relabel(rng: random.Random, g: Graph) -> Graph:
    perm = list(range(g.n))
    rng.shuffle(perm)
    return g.relabel(perm)


# exhaustive enumeration up to isomorphism

def wl_key(g: Graph, rounds: int = 3) -> tuple:
    """Isomorphism invariant used to bucket graphs before exact checks."""
    labels = [len(g.adj[v]) for v in g.vertices]
    for _ in range(rounds):
        labels = [hash((labels[v], tuple(sorted(labels[w] for w in g.adj[v])))) for v in g.vertices]
    return (g.n, g.m, tuple(sorted(labels)))


class IsoCatalog:
    """Keeps one representative per isomorphism class."""

    def __init__(self):
        self.buckets: dict[tuple, list[Graph]] = {}
        self.items: list[Graph] = []

    def add(self, g: Graph) -> bool:
        bucket = self.buckets.setdefault(wl_key(g), [])
        if any(isomorphic(g, h) for h in bucket):
            return False
        bucket.append(g)
        self.items.append(g)
        return True


def cliques(g: Graph) -> Iterator[tuple[int, ...]]:
    """All nonempty cliques in lexicographic order."""

    def rec(current: list[int], cand: list[int]):
        for i, v in enumerate(cand):
            nxt = current + [v]
            yield tuple(nxt)
            yield from rec(nxt, [w for w in cand[i + 1 :] if w in g.adj[v]])

    yield from rec([], list(g.vertices))


def connected_upath_graphs(
    n_max: int, max_diameter: float | None = None, require_paths: bool = True
) -> dict[int, list[tuple[Graph, TreeModel]]]:
    """Connected undirected path (or chordal) graphs on 1..n_max vertices,
    one per isomorphism class, optionally with diameter at most ``max_diameter``.

    Every connected chordal graph on n+1 vertices arises from one on n
    vertices by adding a vertex adjacent to a nonempty clique (a simplicial
    vertex), and deleting a simplicial vertex keeps connectivity, the path
    model and the diameter bound, so level-wise extension is complete.
    """
    levels: dict[int, list[tuple[Graph, TreeModel]]] = {}
    if n_max < 1:
        return levels
    k1 = Graph(1)
    levels[1] = [(k1, search_model(k1, require_paths))]
    for n in range(2, n_max + 1):
        cat = IsoCatalog()
        out = []
        for g, _ in levels[n - 1]:
            for clique in cliques(g):
                h = Graph(n, g.edges | frozenset((v, n - 1) for v in clique))
                if max_diameter is not None and diameter(h) > max_diameter:
                    continue
                if not cat.add(h):
                    continue
                model = search_model(h, require_paths)
                if model is None:
                    continue
                out.append((h, model))
        levels[n] = out
    return levels
