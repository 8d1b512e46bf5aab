"""Hardness gadgets and their certificates.

* :func:`cds_from_3dm` builds the undirected path graph of diameter <= 3 whose
  minimum connected dominating set is at most ``2m + n`` exactly when the 3DM
  instance has a perfect matching, together with its tree model.
* :func:`steiner_from_3dm` reuses that graph with the simplicial vertices as
  terminals.
* :func:`steiner_from_ds` is the parameter-preserving Dominating Set to
  Steiner Tree gadget on bipartite graphs.
* :func:`subdivide` returns s(G) with a split of its edges into two star
  forests.

Vertex numbering of the 3DM gadget is role-major: all ``a_j``, then ``b_j``,
``c_j``, ``x_j``, ``y_j``, ``z1_j``, ``z2_j``, ``z3_j`` (j over triples), then
``p_i``, ``q_i``, ``r_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import InstanceError, SizeError
from .graph import Graph, diameter, is_dominating, simplicial_vertices
from .oracle import isomorphic
from .report import VerificationReport
from .threedm import ThreeDMInstance
from .treemodel import TreeModel, validate

TRIPLE_ROLES = ("a", "b", "c", "x", "y", "z1", "z2", "z3")
ISO_CAP = 64


@dataclass(frozen=True)
class GadgetOutput:
    graph: Graph
    model: TreeModel | None
    terminals: tuple[int, ...]
    budget: int
    labels: tuple[str, ...]

    def vertex(self, label: str) -> int:
        return self.labels.index(label)


@dataclass(frozen=True)
class ThicknessWitness:
    sub: Graph
    part1: frozenset[tuple[int, int]]
    part2: frozenset[tuple[int, int]]


class GadgetIds:
    """Role-major vertex ids and host node ids of the 3DM gadget."""

    def __init__(self, n: int, m: int):
        self.n, self.m = n, m

    def v(self, role: str, j: int) -> int:
        return TRIPLE_ROLES.index(role) * self.m + j

    def p(self, i: int) -> int:
        return 8 * self.m + i

    def q(self, i: int) -> int:
        return 8 * self.m + self.n + i

    def r(self, i: int) -> int:
        return 8 * self.m + 2 * self.n + i

    @property
    def count(self) -> int:
        return 8 * self.m + 3 * self.n

    def labels(self) -> tuple[str, ...]:
        out = [f"{role}_{j}" for role in TRIPLE_ROLES for j in range(self.m)]
        for part in "pqr":
            out += [f"{part}_{i}" for i in range(self.n)]
        return tuple(out)

    def clique_k(self) -> list[int]:
        return sorted(self.v(role, j) for j in range(self.m) for role in "abcx")


def _clique_edges(vs) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u, v in combinations(vs, 2)}


def cds_from_3dm(inst: ThreeDMInstance) -> GadgetOutput:
    n, m = inst.n, inst.m
    ids = GadgetIds(n, m)
    v = ids.v
    edges: set[tuple[int, int]] = set()
    edges |= _clique_edges(ids.clique_k())
    for j in range(m):
        edges |= _clique_edges([v("a", j), v("b", j), v("x", j), v("y", j)])
        edges |= _clique_edges([v("a", j), v("y", j), v("z1", j)])
        edges |= _clique_edges([v("b", j), v("y", j), v("z2", j)])
        edges |= _clique_edges([v("c", j), v("x", j), v("z3", j)])
    for i in range(n):
        edges |= _clique_edges([ids.p(i)] + [v("a", j) for j, s in enumerate(inst.triples) if s[0] == i])
        edges |= _clique_edges([ids.q(i)] + [v("b", j) for j, s in enumerate(inst.triples) if s[1] == i])
        edges |= _clique_edges([ids.r(i)] + [v("c", j) for j, s in enumerate(inst.triples) if s[2] == i])
    graph = Graph(ids.count, frozenset(edges))
    return GadgetOutput(graph, gadget_model(inst), (), 2 * m + n, ids.labels())


def gadget_model(inst: ThreeDMInstance) -> TreeModel:
    """Host tree: a root bag holding K; per triple j a bag {a,b,x,y} with
    children {a,y,z1} and {b,y,z2}, plus a bag {c,x,z3}; one pendant bag per
    element of P, Q and R.
    """
    n, m = inst.n, inst.m
    ids = GadgetIds(n, m)
    v = ids.v
    root = 0

    def ab(j):
        return 1 + 4 * j

    def a_leaf(j):
        return 2 + 4 * j

    def b_leaf(j):
        return 3 + 4 * j

    def c_leaf(j):
        return 4 + 4 * j

    def elem(part, i):
        return 1 + 4 * m + "pqr".index(part) * n + i

    n_nodes = 1 + 4 * m + 3 * n
    tree = []
    bags: list[list[int]] = [[] for _ in range(n_nodes)]
    bags[root] = ids.clique_k()
    for j in range(m):
        tree += [(root, ab(j)), (ab(j), a_leaf(j)), (ab(j), b_leaf(j)), (root, c_leaf(j))]
        bags[ab(j)] = [v("a", j), v("b", j), v("x", j), v("y", j)]
        bags[a_leaf(j)] = [v("a", j), v("y", j), v("z1", j)]
        bags[b_leaf(j)] = [v("b", j), v("y", j), v("z2", j)]
        bags[c_leaf(j)] = [v("c", j), v("x", j), v("z3", j)]
    for part, role, axis, vid in (("p", "a", 0, ids.p), ("q", "b", 1, ids.q), ("r", "c", 2, ids.r)):
        for i in range(n):
            t = elem(part, i)
            tree.append((root, t))
            bags[t] = [vid(i)] + [v(role, j) for j, s in enumerate(inst.triples) if s[axis] == i]
    paths: list[set[int]] = [set() for _ in range(ids.count)]
    for t, bag in enumerate(bags):
        for u in bag:
            paths[u].add(t)
    return TreeModel.build(n_nodes, tree, paths)


def steiner_from_3dm(inst: ThreeDMInstance) -> GadgetOutput:
    """Same graph and model; terminals are the simplicial vertices
    (every z-vertex and every element vertex)."""
    out = cds_from_3dm(inst)
    terms = tuple(simplicial_vertices(out.graph))
    return GadgetOutput(out.graph, out.model, terms, out.budget, out.labels)


def matching_to_cds(inst: ThreeDMInstance, matching) -> list[int]:
    """{a_j, b_j, c_j : j matched} u {x_j, y_j : j unmatched}."""
    ids = GadgetIds(inst.n, inst.m)
    chosen = set(matching)
    out = []
    for j in range(inst.m):
        roles = "abc" if j in chosen else "xy"
        out += [ids.v(r, j) for r in roles]
    return sorted(out)


def steiner_from_ds(g: Graph, k: int) -> GadgetOutput:
    """G' on V(G) (ids kept), then v' = n + v, then r = 2n; X = {r} u {v'}."""
    n = g.n
    if n == 0:
        raise InstanceError("dominating set gadget needs a nonempty graph")
    r = 2 * n
    edges = {(v, r) for v in g.vertices}
    for v in g.vertices:
        for u in set(g.adj[v]) | {v}:
            edges.add((u, n + v))
    graph = Graph(2 * n + 1, frozenset(edges))
    labels = tuple([f"v_{v}" for v in g.vertices] + [f"v'_{v}" for v in g.vertices] + ["r"])
    terminals = tuple(range(n, 2 * n + 1))
    return GadgetOutput(graph, None, terminals, k, labels)


def subdivide(g: Graph) -> ThicknessWitness:
    """s(G) with w_e = n + (index of e in sorted edge order).

    For e = v_i v_j with i < j, v_i w_e goes to part1 and w_e v_j to part2.
    """
    part1, part2 = set(), set()
    for idx, (i, j) in enumerate(g.sorted_edges()):
        w = g.n + idx
        part1.add((i, w))
        part2.add((j, w))
    sub = Graph(g.n + g.m, frozenset(part1 | part2))
    return ThicknessWitness(sub, frozenset(part1), frozenset(part2))


def is_star_forest(n: int, edges) -> bool:
    """Every component is a tree with at most one vertex of degree > 1."""
    h = Graph(n, frozenset(edges))
    if len(h.edges) != len(edges):
        return False
    for comp in h.components():
        m_comp = sum(h.degree(v) for v in comp) // 2
        if m_comp != len(comp) - 1:
            return False
        if sum(1 for v in comp if h.degree(v) > 1) > 1:
            return False
    return True


def iso_transport(g1: Graph, g2: Graph, cap: int = ISO_CAP) -> tuple[bool, bool]:
    s1, s2 = subdivide(g1).sub, subdivide(g2).sub
    if max(s1.n, s2.n) > cap:
        raise SizeError(f"subdivisions exceed the isomorphism cap of {cap} vertices")
    return isomorphic(g1, g2), isomorphic(s1, s2)


def separates(g: Graph, sep, a: int, b: int) -> bool:
    """True iff a and b lie in different components of G - sep."""
    sub, old = g.induced(v for v in g.vertices if v not in set(sep))
    new_of = {v: i for i, v in enumerate(old)}
    return sub.bfs(new_of[a])[new_of[b]] == float("inf")


def certify_cds_gadget(inst: ThreeDMInstance, out: GadgetOutput | None = None) -> VerificationReport:
    """Structural checks of the 3DM gadget (vertex count, model, diameter,
    dominating clique K, separators)."""
    out = out if out is not None else cds_from_3dm(inst)
    g = out.graph
    ids = GadgetIds(inst.n, inst.m)
    rep = VerificationReport()
    rep.add("vertex count 8m+3n", g.n == ids.count, f"{g.n} vs {ids.count}")
    mrep = validate(out.model, g, require_paths=True)
    rep.add("path tree model valid", mrep.passed, "; ".join(c.detail for c in mrep.failures()))
    host = out.model.host
    shape = (
        host.n == 1 + 4 * inst.m + 3 * inst.n
        and host.degree(0) == 2 * inst.m + 3 * inst.n
        and sorted(out.model.bags()[0]) == ids.clique_k()
    )
    rep.add("host has the root/branch/pendant layout", shape)
    diam = diameter(g)
    rep.add("diameter <= 3", diam <= 3, f"diameter {diam}")
    k = ids.clique_k()
    rep.add("K is a clique", g.is_clique(k))
    rep.add("K is dominating", is_dominating(g, k))
    v = ids.v
    bad1 = [j for j in range(inst.m) if not separates(g, [v("a", j), v("b", j), v("x", j)], v("c", j), v("y", j))]
    bad2 = [j for j in range(inst.m) if not separates(g, [v("c", j), v("x", j)], v("z3", j), v("y", j))]
    rep.add("{a_j,b_j,x_j} separates c_j from y_j", not bad1, f"failing j {bad1}" if bad1 else "")
    rep.add("{c_j,x_j} separates z3_j from y_j", not bad2, f"failing j {bad2}" if bad2 else "")
    return rep
