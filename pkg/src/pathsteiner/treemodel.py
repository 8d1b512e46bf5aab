"""Tree models of chordal and undirected path graphs.

A tree model is a host tree plus one nonempty node set per graph vertex; the
modeled graph has an edge uv exactly when the two node sets intersect.  In a
path model every node set spans a path of the host.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InstanceError, RangeError, SizeError
from .graph import Graph, mask_connected, to_mask
from .report import VerificationReport

SEARCH_CAP = 10


@dataclass(frozen=True)
class TreeModel:
    host: Graph
    paths: tuple[frozenset[int], ...]

    @classmethod
    def build(cls, n_nodes: int, tree_edges: Iterable[Sequence[int]], paths: Iterable[Iterable[int]]):
        return cls(
            Graph.from_edges(n_nodes, tree_edges), tuple(frozenset(p) for p in paths)
        )

    @property
    def n(self) -> int:
        return len(self.paths)

    @property
    def n_nodes(self) -> int:
        return self.host.n

    def bags(self) -> list[set[int]]:
        """V_t for every host node t."""
        out: list[set[int]] = [set() for _ in range(self.host.n)]
        for u, p in enumerate(self.paths):
            for t in p:
                out[t].add(u)
        return out

    def realized_graph(self) -> Graph:
        edges = set()
        for bag in self.bags():
            edges.update(combinations(sorted(bag), 2))
        return Graph(self.n, frozenset(edges))

    def restrict(self, keep: Sequence[int]) -> "TreeModel":
        """Model of the induced subgraph on ``keep`` (ascending, relabeled densely)."""
        return TreeModel(self.host, tuple(self.paths[v] for v in sorted(keep)))

    def host_leaves(self) -> list[int]:
        if self.host.n < 2:
            return []
        return [t for t in self.host.vertices if self.host.degree(t) == 1]


@dataclass(frozen=True)
class LeafyReport:
    leafy: list[int]
    leaf_of: dict[int, int]


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and g.is_connected()


def is_subtree(host: Graph, nodes: Iterable[int]) -> bool:
    nodes = to_mask(nodes)
    return nodes != 0 and mask_connected(host.nbr_mask, nodes)


def is_host_path(host: Graph, nodes: Iterable[int]) -> bool:
    nodes = set(nodes)
    if not is_subtree(host, nodes):
        return False
    return all(len(host.adj[t] & nodes) <= 2 for t in nodes)


def path_order(host: Graph, nodes: Iterable[int]) -> list[int]:
    """Nodes of a host path listed end to end, starting from the smaller end."""
    nodes = set(nodes)
    if len(nodes) == 1:
        return list(nodes)
    ends = sorted(t for t in nodes if len(host.adj[t] & nodes) == 1)
    order = [ends[0]]
    prev = None
    while len(order) < len(nodes):
        cur = order[-1]
        nxt = [w for w in host.adj[cur] & nodes if w != prev]
        prev = cur
        order.append(nxt[0])
    return order


def _structure_problems(m: TreeModel, require_paths: bool) -> list[str]:
    problems = []
    if not is_tree(m.host):
        problems.append("host is not a tree")
        return problems
    for u, p in enumerate(m.paths):
        if not p:
            problems.append(f"vertex {u}: empty node set")
        elif any(not 0 <= t < m.host.n for t in p):
            problems.append(f"vertex {u}: node outside host")
        elif not is_subtree(m.host, p):
            problems.append(f"vertex {u}: node set is not a subtree")
        elif require_paths and not is_host_path(m.host, p):
            problems.append(f"vertex {u}: node set is not a path")
    return problems


def validate(m: TreeModel, g: Graph, require_paths: bool = True) -> VerificationReport:
    if m.n != g.n:
        raise InstanceError(f"model covers {m.n} vertices, graph has {g.n}")
    report = VerificationReport()
    tree_ok = is_tree(m.host)
    report.add("host is a tree", tree_ok)
    problems = _structure_problems(m, False) if tree_ok else []
    report.add("every node set is a nonempty subtree", tree_ok and not problems, "; ".join(problems))
    if require_paths:
        bad = [u for u, p in enumerate(m.paths) if tree_ok and p and not is_host_path(m.host, p)]
        report.add(
            "every node set is a path",
            tree_ok and not bad,
            "" if not bad else f"non-path vertices {bad}",
        )
    if tree_ok and not problems:
        realized = m.realized_graph()
        missing = sorted(g.edges - realized.edges)
        extra = sorted(realized.edges - g.edges)
        detail = []
        if missing:
            detail.append(f"edges without intersecting paths {missing}")
        if extra:
            detail.append(f"intersecting non-edges {extra}")
        report.add("intersection law", not missing and not extra, "; ".join(detail))
    else:
        report.add("intersection law", False, "structure invalid")
    return report


def node_set(m: TreeModel, t: int) -> list[int]:
    if not 0 <= t < m.host.n:
        raise RangeError(f"node {t} outside host [0, {m.host.n})")
    return sorted(u for u, p in enumerate(m.paths) if t in p)


def contractible_edges(m: TreeModel) -> list[tuple[int, int]]:
    """Host edges (t, t') with V_t a subset of V_t'."""
    bags = m.bags()
    out = []
    for a, b in m.host.sorted_edges():
        if bags[a] <= bags[b]:
            out.append((a, b))
        if bags[b] <= bags[a]:
            out.append((b, a))
    return out


def make_minimal(m: TreeModel) -> TreeModel:
    return make_minimal_map(m)[0]


def make_minimal_map(m: TreeModel) -> tuple[TreeModel, list[int]]:
    """Contract host edges tt' with V_t <= V_t' (t merged into t') to a fixpoint.

    Returns the minimal model and, for each of its nodes, the id of the input
    node that survived as it.
    """
    problems = _structure_problems(m, False)
    if problems:
        raise InstanceError("invalid tree model: " + "; ".join(problems))
    nbrs = {t: set(m.host.adj[t]) for t in m.host.vertices}
    paths = [set(p) for p in m.paths]
    bags = {t: set() for t in nbrs}
    for u, p in enumerate(paths):
        for t in p:
            bags[t].add(u)

    def find_contraction():
        for t in sorted(nbrs):
            for s in sorted(nbrs[t]):
                if bags[t] <= bags[s]:
                    return t, s
        return None

    while (pair := find_contraction()) is not None:
        t, s = pair
        for w in nbrs.pop(t):
            nbrs[w].discard(t)
            if w != s:
                nbrs[w].add(s)
                nbrs[s].add(w)
        for u in bags.pop(t):
            paths[u].discard(t)
        if any(not _connected_in(nbrs, paths[u]) for u in bags[s]):
            raise AssertionError("contraction broke a subtree")
    survivors = sorted(nbrs)
    new_of = {t: i for i, t in enumerate(survivors)}
    host = Graph(
        len(survivors),
        frozenset((new_of[a], new_of[b]) for a in nbrs for b in nbrs[a] if a < b),
    )
    out = TreeModel(host, tuple(frozenset(new_of[t] for t in p) for p in paths))
    return out, survivors


def _connected_in(nbrs: dict[int, set[int]], nodes: set[int]) -> bool:
    if not nodes:
        return False
    start = next(iter(nodes))
    seen, stack = {start}, [start]
    while stack:
        for w in nbrs[stack.pop()] & nodes:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen == nodes


def is_minimal(m: TreeModel) -> bool:
    return not contractible_edges(m)


def leafy_vertices(m: TreeModel) -> LeafyReport:
    leaves = set(m.host_leaves())
    leaf_of = {}
    for u, p in enumerate(m.paths):
        if len(p) == 1:
            (t,) = p
            if t in leaves:
                leaf_of[u] = t
    return LeafyReport(sorted(leaf_of), leaf_of)


# chordal structure

def mcs_order(g: Graph) -> list[int]:
    """Maximum cardinality search visit order (ties to the lowest id)."""
    weight = [0] * g.n
    done = [False] * g.n
    order = []
    for _ in range(g.n):
        v = max((u for u in g.vertices if not done[u]), key=lambda u: (weight[u], -u))
        done[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not done[w]:
                weight[w] += 1
    return order


def perfect_elimination_order(g: Graph) -> list[int] | None:
    peo = mcs_order(g)[::-1]
    pos = {v: i for i, v in enumerate(peo)}
    for v in peo:
        later = [w for w in g.adj[v] if pos[w] > pos[v]]
        if not later:
            continue
        p = min(later, key=pos.__getitem__)
        if any(w != p and w not in g.adj[p] for w in later):
            return None
    return peo


def is_chordal(g: Graph) -> bool:
    return perfect_elimination_order(g) is not None


def maximal_cliques_chordal(g: Graph) -> list[frozenset[int]]:
    peo = perfect_elimination_order(g)
    if peo is None:
        raise InstanceError("graph is not chordal")
    pos = {v: i for i, v in enumerate(peo)}
    cands = {frozenset({v} | {w for w in g.adj[v] if pos[w] > pos[v]}) for v in peo}
    maximal = [c for c in cands if not any(c < d for d in cands)]
    return sorted(maximal, key=lambda c: sorted(c))


def search_model(
    g: Graph,
    require_paths: bool = True,
    node_budget: int | None = None,
    cap: int = SEARCH_CAP,
) -> TreeModel | None:
    """Exhaustively look for a (path) tree model with at most ``node_budget`` nodes.

    Only clique trees are searched: contracting any model to a minimal one
    yields a clique tree with the same path property, and clique trees have
    the fewest host nodes possible.
    """
    if g.n > cap:
        raise SizeError(f"search_model is capped at {cap} vertices, got {g.n}")
    if node_budget is None:
        node_budget = max(1, g.n)
    if g.n == 0:
        return TreeModel(Graph(1), ())
    if not is_chordal(g):
        return None
    cliques = maximal_cliques_chordal(g)
    k = len(cliques)
    if k > node_budget:
        return None
    if k == 1:
        return TreeModel(Graph(1), tuple(frozenset({0}) for _ in g.vertices))

    member = [[i for i, c in enumerate(cliques) if u in c] for u in g.vertices]
    pairs = sorted(
        combinations(range(k), 2), key=lambda e: (-len(cliques[e[0]] & cliques[e[1]]), e)
    )
    weights = [len(cliques[a] & cliques[b]) for a, b in pairs]
    target = _max_spanning_weight(k, pairs, weights)
    shared = [sorted(cliques[a] & cliques[b]) for a, b in pairs]

    chosen: list[tuple[int, int]] = []
    deg = {}  # (vertex, clique) -> degree inside that vertex's node set

    def find(parent, x):
        while parent[x] != x:
            x = parent[x]
        return x

    def rec(idx: int, weight: int, parent: list[int]):
        need = k - 1 - len(chosen)
        if need == 0:
            if weight != target:
                return None
            model = TreeModel(
                Graph(k, frozenset(chosen)), tuple(frozenset(member[u]) for u in g.vertices)
            )
            if _structure_problems(model, require_paths):
                return None
            return model
        if weight + sum(weights[idx : idx + need]) < target or len(pairs) - idx < need:
            return None
        for i in range(idx, len(pairs)):
            if weight + sum(weights[i : i + need]) < target:
                break
            a, b = pairs[i]
            ra, rb = find(parent, a), find(parent, b)
            if ra == rb:
                continue
            if require_paths and any(
                deg.get((u, a), 0) >= 2 or deg.get((u, b), 0) >= 2 for u in shared[i]
            ):
                continue
            for u in shared[i]:
                deg[(u, a)] = deg.get((u, a), 0) + 1
                deg[(u, b)] = deg.get((u, b), 0) + 1
            chosen.append((a, b))
            child = parent[:]
            child[ra] = rb
            found = rec(i + 1, weight + weights[i], child)
            chosen.pop()
            for u in shared[i]:
                deg[(u, a)] -= 1
                deg[(u, b)] -= 1
            if found is not None:
                return found
        return None

    return rec(0, 0, list(range(k)))


def _max_spanning_weight(k: int, pairs, weights) -> int:
    parent = list(range(k))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = 0
    for (a, b), w in zip(pairs, weights):  # pairs are sorted by weight, descending
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            total += w
    return total
