"""Exact exponential-time reference solvers.

Two exhaustive routes are provided for the set problems:

``method="enumerate"``
    plain subset enumeration by increasing cardinality, lexicographic inside a
    cardinality; capped at ``ENUM_CAP`` vertices.
``method="search"``
    iterative-deepening branching.  Each branch adds one vertex that every
    solution extending the current set must contain (a dominator of an
    undominated vertex, or a vertex on the boundary of a component), so the
    search is complete.  All minimum solutions are collected at the optimal
    depth and the lexicographically smallest one is returned, which makes the
    two routes return identical witnesses.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable

from .errors import InstanceError, SizeError
from .graph import (
    Graph,
    closed_mask,
    is_connected_induced,
    is_dominating,
    mask_components,
    mask_connected,
    mask_to_list,
    to_mask,
)
from .threedm import ThreeDMInstance

ENUM_CAP = 24
SEARCH_CAP = 48


@dataclass(frozen=True)
class Witness:
    """Answer of a minimization query.

    ``objective`` is the witness size when ``status == "yes"``; for ``"no"`` it
    is a proven lower bound (budget + 1), or None when no solution exists at all.
    """

    status: str
    members: tuple[int, ...] = ()
    objective: int | None = None

    @property
    def yes(self) -> bool:
        return self.status == "yes"

    def to_dict(self) -> dict:
        return {"status": self.status, "members": list(self.members), "objective": self.objective}


def _yes(members: Iterable[int]) -> Witness:
    members = tuple(sorted(members))
    return Witness("yes", members, len(members))


def _no(budget: int | None) -> Witness:
    return Witness("no", (), None if budget is None else budget + 1)


def _popcount(x: int) -> int:
    return bin(x).count("1")


# generic engines

Branch = Callable[[int], "int | None"]


def _search_min(
    start: int, branch: Branch, k_max: int, lower: Callable[[int], int] | None = None
) -> int | None:
    """Lexicographically first minimum extension of ``start``.

    ``branch(D)`` returns None when D is a solution, otherwise the mask of
    vertices one of which every solution containing D must also contain.
    ``lower(D)`` is an optional lower bound on the number of vertices still
    to add.
    """
    k0 = lower(start) if lower else 0
    for k in range(k0, k_max + 1):
        seen: set[int] = set()
        sols: list[int] = []

        def rec(d: int, left: int) -> None:
            if d in seen:
                return
            seen.add(d)
            cand = branch(d)
            if cand is None:
                sols.append(d)
                return
            if left == 0 or (lower is not None and lower(d) > left):
                return
            while cand:
                low = cand & -cand
                rec(d | low, left - 1)
                cand ^= low

        rec(start, k)
        if sols:
            return min(sols, key=lambda d: mask_to_list(d & ~start))
    return None


def _enumerate_min(pool: list[int], ok: Callable[[tuple[int, ...]], bool], k_max: int):
    for k in range(min(k_max, len(pool)) + 1):
        for combo in combinations(pool, k):
            if ok(combo):
                return combo
    return None


def _check_cap(g: Graph, method: str) -> None:
    if method == "enumerate":
        if g.n > ENUM_CAP:
            raise SizeError(f"enumeration oracle is capped at {ENUM_CAP} vertices, got {g.n}")
    elif method == "search":
        if g.n > SEARCH_CAP:
            raise SizeError(f"search oracle is capped at {SEARCH_CAP} vertices, got {g.n}")
    else:
        raise ValueError(f"unknown method {method!r}")


def _min_boundary(g: Graph, d: int, allowed: int) -> int:
    """Outside neighbors of the component of d with the fewest of them."""
    best = None
    for comp in mask_components(g.nbr_mask, d):
        bd = closed_mask(g, comp) & ~d & allowed
        if best is None or _popcount(bd) < _popcount(best):
            best = bd
    return best


def _undominated_pick(g: Graph, undominated: int, usable: int) -> int:
    """Closed neighborhood (within ``usable``) of the hardest undominated vertex."""
    best = None
    while undominated:
        low = undominated & -undominated
        v = low.bit_length() - 1
        opts = (g.nbr_mask[v] | low) & usable
        if best is None or _popcount(opts) < _popcount(best):
            best = opts
            if best == 0:
                break
        undominated ^= low
    return best


def _packing_bound(g: Graph, two_hop: list[int], undominated: int) -> int:
    """Undominated vertices pairwise at distance >= 3 need distinct dominators."""
    count = 0
    blocked = 0
    while undominated:
        low = undominated & -undominated
        undominated ^= low
        if low & blocked:
            continue
        count += 1
        blocked |= two_hop[low.bit_length() - 1]
    return count


def _two_hop(g: Graph) -> list[int]:
    return [closed_mask(g, g.nbr_mask[v] | (1 << v)) for v in g.vertices]


# queries

def steiner_min(
    g: Graph, x: Iterable[int], budget: int | None = None, method: str = "search"
) -> Witness:
    """Minimum S outside X with G[S u X] connected; objective is ST(G, X)."""
    x = sorted(set(x))
    for v in x:
        g.check_vertex(v)
    if not x:
        raise InstanceError("terminal set is empty")
    if not g.is_connected():
        raise InstanceError("graph is disconnected")
    _check_cap(g, method)
    k_max = g.n - len(x) if budget is None else budget
    xm = to_mask(x)
    allowed = g.full_mask & ~xm
    if method == "enumerate":
        pool = mask_to_list(allowed)
        best = _enumerate_min(pool, lambda s: mask_connected(g.nbr_mask, xm | to_mask(s)), k_max)
        return _no(budget) if best is None else _yes(best)

    def branch(d: int):
        if mask_connected(g.nbr_mask, d):
            return None
        return _min_boundary(g, d, allowed)

    best = _search_min(xm, branch, k_max, lambda d: 0 if mask_connected(g.nbr_mask, d) else 1)
    return _no(budget) if best is None else _yes(mask_to_list(best & ~xm))


def cds_min(g: Graph, budget: int | None = None, method: str = "search") -> Witness:
    """Minimum connected dominating set."""
    if not g.is_connected():
        raise InstanceError("graph is disconnected")
    _check_cap(g, method)
    k_max = g.n if budget is None else budget
    full = g.full_mask
    if method == "enumerate":
        best = _enumerate_min(list(g.vertices), lambda s: _is_cds(g, to_mask(s)), k_max)
        return _no(budget) if best is None else _yes(best)

    def branch(d: int):
        undom = full & ~closed_mask(g, d)
        if undom:
            return _undominated_pick(g, undom, full)
        if mask_connected(g.nbr_mask, d):
            return None
        return _min_boundary(g, d, full)

    two_hop = _two_hop(g)

    def lower(d: int) -> int:
        undom = full & ~closed_mask(g, d)
        if undom:
            return _packing_bound(g, two_hop, undom)
        return 0 if mask_connected(g.nbr_mask, d) else 1

    best = _search_min(0, branch, k_max, lower)
    return _no(budget) if best is None else _yes(mask_to_list(best))


def _is_cds(g: Graph, d: int) -> bool:
    if g.n == 0:
        return True
    return d != 0 and closed_mask(g, d) == g.full_mask and mask_connected(g.nbr_mask, d)


def ds_min(g: Graph, budget: int | None = None, method: str = "search") -> Witness:
    """Minimum dominating set (no connectivity requirement)."""
    _check_cap(g, method)
    k_max = g.n if budget is None else budget
    full = g.full_mask
    if method == "enumerate":
        best = _enumerate_min(
            list(g.vertices), lambda s: closed_mask(g, to_mask(s)) == full, k_max
        )
        return _no(budget) if best is None else _yes(best)

    def branch(d: int):
        undom = full & ~closed_mask(g, d)
        return _undominated_pick(g, undom, full) if undom else None

    two_hop = _two_hop(g)
    best = _search_min(
        0, branch, k_max, lambda d: _packing_bound(g, two_hop, full & ~closed_mask(g, d))
    )
    return _no(budget) if best is None else _yes(mask_to_list(best))


def dominating_clique_min(
    g: Graph,
    candidates: Iterable[int],
    targets: Iterable[int],
    budget: int | None = None,
    method: str = "search",
) -> Witness:
    """Minimum clique S within ``candidates`` with ``targets`` inside N[S]."""
    _check_cap(g, method)
    cm = to_mask(candidates)
    tm = to_mask(targets)
    k_max = _popcount(cm) if budget is None else budget
    if method == "enumerate":
        best = _enumerate_min(
            mask_to_list(cm),
            lambda s: g.is_clique(s) and (tm & ~closed_mask(g, to_mask(s))) == 0,
            k_max,
        )
        return _no(budget) if best is None else _yes(best)

    def branch(d: int):
        undom = tm & ~closed_mask(g, d)
        if not undom:
            return None
        common = cm & ~d
        rest = d
        while rest:
            low = rest & -rest
            common &= g.nbr_mask[low.bit_length() - 1]
            rest ^= low
        return _undominated_pick(g, undom, common)

    best = _search_min(0, branch, k_max)
    return _no(budget) if best is None else _yes(mask_to_list(best))


def three_dm(inst: ThreeDMInstance) -> Witness:
    """First (lexicographic) set of n pairwise-disjoint triples.

    On a no-instance the objective is the largest number of pairwise-disjoint
    triples, found by the same enumeration.
    """

    def disjoint(idx: tuple[int, ...]) -> bool:
        return all(
            len({inst.triples[j][axis] for j in idx}) == len(idx) for axis in range(3)
        )

    for combo in combinations(range(inst.m), inst.n):
        if disjoint(combo):
            return Witness("yes", combo, inst.n)
    best = 0
    for k in range(inst.n - 1, 0, -1):
        if any(disjoint(c) for c in combinations(range(inst.m), k)):
            best = k
            break
    return Witness("no", (), best)


def verify_witness(kind: str, g: Graph, w: Witness, x: Iterable[int] = (), targets=None) -> bool:
    """Re-check a yes-witness against the defining predicate of its query."""
    if not w.yes:
        return True
    s = list(w.members)
    if kind == "steiner":
        x = set(x)
        return not (set(s) & x) and is_connected_induced(g, sorted(set(s) | x))
    if kind == "cds":
        return is_dominating(g, s) and is_connected_induced(g, s)
    if kind == "ds":
        return is_dominating(g, s)
    if kind == "clique":
        return g.is_clique(s) and set(targets or ()) <= set().union(
            *(set(g.adj[u]) | {u} for u in s)
        )
    raise ValueError(kind)


# isomorphism

def _refine(g: Graph, start: list[int]) -> list[int]:
    colors = start[:]
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in g.adj[v]))) for v in g.vertices]
        table = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [table[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def isomorphic(g1: Graph, g2: Graph) -> bool:
    """Exact isomorphism test: color refinement, then degree-pruned backtracking."""
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(map(len, g1.adj)) != sorted(map(len, g2.adj)):
        return False
    n = g1.n
    if n == 0:
        return True
    # refine on the disjoint union so both color sets share one palette
    union = Graph(
        2 * n, g1.edges | frozenset((u + n, v + n) for u, v in g2.edges)
    )
    colors = _refine(union, [len(union.adj[v]) for v in union.vertices])
    c1, c2 = colors[:n], colors[n:]
    if sorted(c1) != sorted(c2):
        return False
    by_color: dict[int, list[int]] = {}
    for v in range(n):
        by_color.setdefault(c2[v], []).append(v)
    # small classes first, then keep the order connected where possible
    order: list[int] = []
    placed: set[int] = set()
    rest = sorted(range(n), key=lambda v: (len(by_color[c1[v]]), v))
    while len(order) < n:
        frontier = [v for v in rest if v not in placed and g1.adj[v] & placed]
        v = frontier[0] if frontier else next(v for v in rest if v not in placed)
        order.append(v)
        placed.add(v)

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def rec(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in by_color[c1[v]]:
            if w in used:
                continue
            if all((u in g1.adj[v]) == (mapping[u] in g2.adj[w]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if rec(i + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return rec(0)


# matching

def max_matching(g: Graph) -> set[tuple[int, int]]:
    """Maximum matching of a general graph by Edmonds' blossom algorithm, O(n^3).

    Augmenting paths are searched from each exposed vertex in id order with
    neighbors scanned ascending, so the result is deterministic.
    """
    n = g.n
    adj = [sorted(a) for a in g.adj]
    match = [-1] * n

    def lca(a: int, b: int, base: list[int], parent: list[int]) -> int:
        seen = [False] * n
        while True:
            a = base[a]
            seen[a] = True
            if match[a] == -1:
                break
            a = parent[match[a]]
        while True:
            b = base[b]
            if seen[b]:
                return b
            b = parent[match[b]]

    def mark(v: int, b: int, child: int, blossom, base, parent) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def augmenting_end(root: int):
        used = [False] * n
        parent = [-1] * n
        base = list(range(n))
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    cur = lca(v, to, base, parent)
                    blossom = [False] * n
                    mark(v, cur, to, blossom, base, parent)
                    mark(to, cur, v, blossom, base, parent)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cur
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        return to, parent
                    used[match[to]] = True
                    queue.append(match[to])
        return -1, parent

    for root in range(n):
        if match[root] != -1:
            continue
        v, parent = augmenting_end(root)
        while v != -1:
            pv = parent[v]
            nxt = match[pv]
            match[v], match[pv] = pv, v
            v = nxt
    return {(v, match[v]) for v in range(n) if match[v] > v}
