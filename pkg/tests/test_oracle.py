from __future__ import annotations

from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import connected_graphs, graphs
from pathsteiner.errors import InstanceError, SizeError
from pathsteiner.generate import random_relabel, rng_for
from pathsteiner.graph import Graph
from pathsteiner.oracle import (
    ENUM_CAP,
    SEARCH_CAP,
    cds_min,
    dominating_clique_min,
    ds_min,
    isomorphic,
    max_matching,
    steiner_min,
    three_dm,
    verify_witness,
)
from pathsteiner.reductions import cds_from_3dm, subdivide
from pathsteiner.threedm import ThreeDMInstance


def nxg(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.edges)
    return h


class TestSteiner:
    def test_star_leaves(self):
        w = steiner_min(Graph.star(3), [1, 2, 3])
        assert (w.status, w.members, w.objective) == ("yes", (0,), 1)

    def test_connected_terminals(self):
        assert steiner_min(Graph.path(5), [1, 2, 3]).objective == 0

    def test_path_ends(self):
        w = steiner_min(Graph.path(4), [0, 3])
        assert w.objective == 2 and w.members == (1, 2)

    def test_errors(self):
        with pytest.raises(InstanceError):
            steiner_min(Graph.path(3), [])
        with pytest.raises(InstanceError):
            steiner_min(Graph(2), [0, 1])

    def test_budget(self):
        w = steiner_min(Graph.path(6), [0, 5], budget=3)
        assert w.status == "no" and w.objective == 4 and w.members == ()
        assert steiner_min(Graph.path(6), [0, 5], budget=4).yes

    @given(connected_graphs(1, 8))
    def test_all_terminals(self, g):
        assert steiner_min(g, g.vertices).objective == 0

    @given(connected_graphs(2, 9), st.data())
    def test_search_equals_enumeration(self, g, data):
        x = data.draw(st.sets(st.integers(0, g.n - 1), min_size=1))
        a, b = steiner_min(g, x), steiner_min(g, x, method="enumerate")
        assert a == b
        assert verify_witness("steiner", g, a, x)

    @given(connected_graphs(2, 8), st.data())
    def test_against_networkx_steiner_bound(self, g, data):
        # a minimum Steiner tree has at least |S| + |X| - 1 edges; networkx's
        # approximation returns a tree, whose non-terminal count bounds ST from above
        x = sorted(data.draw(st.sets(st.integers(0, g.n - 1), min_size=2)))
        approx = nx.algorithms.approximation.steiner_tree(nxg(g), x)
        upper = approx.number_of_nodes() - len(x)
        assert steiner_min(g, x).objective <= upper


class TestDomination:
    def test_stars(self):
        for k in (1, 3, 5):
            assert ds_min(Graph.star(k)).objective == 1
            assert cds_min(Graph.star(k)).objective == 1

    def test_p4(self):
        assert ds_min(Graph.path(4)).objective == 2
        w = cds_min(Graph.path(4))
        assert w.objective == 2 and w.members == (1, 2)

    def test_gadget_n1_m1(self):
        out = cds_from_3dm(ThreeDMInstance(1, ((0, 0, 0),)))
        assert out.graph.n == 11
        assert cds_min(out.graph).objective == 3 == out.budget

    def test_disconnected(self):
        with pytest.raises(InstanceError):
            cds_min(Graph(2))

    @given(connected_graphs(1, 9))
    def test_cds_at_least_ds(self, g):
        assert cds_min(g).objective >= ds_min(g).objective

    @given(connected_graphs(1, 9))
    def test_search_equals_enumeration(self, g):
        for f, kind in ((cds_min, "cds"), (ds_min, "ds")):
            a, b = f(g), f(g, method="enumerate")
            assert a == b
            assert verify_witness(kind, g, a)

    @given(graphs(1, 8))
    def test_ds_matches_networkx_check(self, g):
        w = ds_min(g)
        assert nx.is_dominating_set(nxg(g), w.members)
        # no smaller dominating set exists
        assert not any(
            nx.is_dominating_set(nxg(g), c) for c in combinations(g.vertices, w.objective - 1)
        )

    def test_cap(self):
        with pytest.raises(SizeError):
            ds_min(Graph.path(ENUM_CAP + 1), method="enumerate")
        with pytest.raises(SizeError):
            ds_min(Graph.path(SEARCH_CAP + 1))


class TestDominatingClique:
    def test_star(self):
        w = dominating_clique_min(Graph.star(3), [0], [1, 2, 3])
        assert w.members == (0,) and w.objective == 1

    def test_c5(self):
        c5 = Graph.cycle(5)
        assert dominating_clique_min(c5, c5.vertices, c5.vertices, budget=1).status == "no"
        w = dominating_clique_min(c5, c5.vertices, c5.vertices)
        assert w.status == "no" and w.objective is None

    def test_empty_targets(self):
        w = dominating_clique_min(Graph.cycle(5), [0, 1], [])
        assert w.yes and w.objective == 0 and w.members == ()

    @given(graphs(1, 9), st.data())
    def test_search_equals_enumeration(self, g, data):
        cand = data.draw(st.sets(st.integers(0, g.n - 1)))
        targ = data.draw(st.sets(st.integers(0, g.n - 1)))
        a = dominating_clique_min(g, cand, targ)
        assert a == dominating_clique_min(g, cand, targ, method="enumerate")
        assert verify_witness("clique", g, a, targets=targ)

    @given(graphs(1, 8))
    def test_full_query_against_clique_listing(self, g):
        # dominating-clique number from networkx's clique enumeration
        h = nxg(g)
        sizes = [
            len(c)
            for c in nx.enumerate_all_cliques(h)
            if nx.is_dominating_set(h, c)
        ]
        w = dominating_clique_min(g, g.vertices, g.vertices)
        assert w.objective == (min(sizes) if sizes else None)


class TestThreeDM:
    def test_single(self):
        w = three_dm(ThreeDMInstance(1, ((0, 0, 0),)))
        assert w.yes and w.members == (0,)

    def test_shared_p(self):
        assert not three_dm(ThreeDMInstance(2, ((0, 0, 0), (0, 1, 1)))).yes

    def test_three_triples(self):
        w = three_dm(ThreeDMInstance(2, ((0, 0, 0), (1, 1, 1), (0, 1, 0))))
        assert w.members == (0, 1)

    def test_malformed(self):
        with pytest.raises(InstanceError):
            ThreeDMInstance(2, ((0, 0, 2),))
        with pytest.raises(InstanceError):
            ThreeDMInstance(2, ((0, 0, 1), (0, 0, 1)))
        with pytest.raises(InstanceError):
            ThreeDMInstance(1, ())

    def test_against_networkx_matching_on_n2(self):
        # for n = 2 a perfect 3D matching is two triples differing in every axis
        from pathsteiner.threedm import all_instances

        for inst in all_instances(2, 4):
            h = nx.Graph()
            h.add_nodes_from(range(inst.m))
            h.add_edges_from(
                (i, j)
                for i, j in combinations(range(inst.m), 2)
                if all(inst.triples[i][a] != inst.triples[j][a] for a in range(3))
            )
            assert three_dm(inst).yes == (h.number_of_edges() > 0)


class TestIsomorphic:
    @given(graphs(0, 8), st.integers(0, 10**6))
    def test_relabel(self, g, seed):
        assert isomorphic(g, random_relabel(rng_for(seed), g))

    def test_p4_vs_star(self):
        assert not isomorphic(Graph.path(4), Graph.star(3))

    def test_c6_vs_subdivided_triangle(self):
        assert isomorphic(Graph.cycle(6), subdivide(Graph.complete(3)).sub)

    def test_c6_vs_two_triangles(self):
        two = Graph(6, frozenset({(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)}))
        assert not isomorphic(Graph.cycle(6), two)

    @given(graphs(0, 7), graphs(0, 7))
    def test_matches_networkx(self, g1, g2):
        assert isomorphic(g1, g2) == nx.is_isomorphic(nxg(g1), nxg(g2))

    def test_regular_pairs_against_networkx(self):
        # regular graphs defeat degree-based pruning; compare on all pairs
        regs = [Graph(8, frozenset(tuple(sorted(e)) for e in nx.random_regular_graph(3, 8, seed=s).edges)) for s in range(12)]
        for a, b in combinations(regs, 2):
            assert isomorphic(a, b) == nx.is_isomorphic(nxg(a), nxg(b))


def _exhaustive_matching(g: Graph) -> int:
    edges = g.sorted_edges()
    for k in range(g.n // 2, 0, -1):
        for c in combinations(edges, k):
            if len({v for e in c for v in e}) == 2 * k:
                return k
    return 0


def _exhaustive_edge_cover(g: Graph) -> int:
    edges = g.sorted_edges()
    for k in range(1, len(edges) + 1):
        for c in combinations(edges, k):
            if len({v for e in c for v in e}) == g.n:
                return k
    raise AssertionError("no edge cover")


class TestMatching:
    def test_examples(self):
        assert len(max_matching(Graph.path(3))) == 1
        assert len(max_matching(Graph.cycle(4))) == 2
        assert len(max_matching(Graph.complete(4))) == 2

    @given(graphs(0, 10))
    def test_is_a_matching_of_maximum_size(self, g):
        m = max_matching(g)
        assert all(g.has_edge(u, v) for u, v in m)
        assert len({v for e in m for v in e}) == 2 * len(m)
        assert len(m) == len(nx.max_weight_matching(nxg(g), maxcardinality=True))

    @given(graphs(0, 8))
    def test_against_exhaustive(self, g):
        assert len(max_matching(g)) == _exhaustive_matching(g)

    def test_blossom_needed(self):
        # odd cycle with a pendant path: greedy augmenting without blossoms fails here
        g = Graph.from_edges(7, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 5), (3, 6)])
        assert len(max_matching(g)) == 3

    @given(graphs(2, 8))
    def test_edge_cover_identity(self, g):
        if any(g.degree(v) == 0 for v in g.vertices):
            return
        assert _exhaustive_edge_cover(g) == g.n - len(max_matching(g))
