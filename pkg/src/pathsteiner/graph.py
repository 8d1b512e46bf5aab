"""Simple undirected graphs on dense integer vertices 0..n-1.

Besides adjacency sets, every :class:`Graph` keeps one bitmask per vertex so
the exhaustive oracles can test connectivity and domination with integer ops.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InstanceError, RangeError

Edge = tuple[int, int]


def _norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset[Edge] = frozenset()
    adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    nbr_mask: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise InstanceError("negative vertex count")
        adj: list[set[int]] = [set() for _ in range(self.n)]
        edges = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise RangeError(f"edge {e} has an endpoint outside [0, {self.n})")
            e = _norm_edge(u, v)
            edges.add(e)
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "edges", frozenset(edges))
        object.__setattr__(self, "adj", tuple(frozenset(a) for a in adj))
        object.__setattr__(
            self, "nbr_mask", tuple(sum(1 << w for w in a) for a in adj)
        )

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "Graph":
        """Build a graph, rejecting duplicate edges (in either orientation)."""
        seen: set[Edge] = set()
        for u, v in edges:
            e = _norm_edge(u, v)
            if e in seen:
                raise InstanceError(f"duplicate edge {e}")
            seen.add(e)
        return cls(n, frozenset(seen))

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, frozenset((i, i + 1) for i in range(n - 1)))

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, frozenset(_norm_edge(i, (i + 1) % n) for i in range(n)))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, frozenset(combinations(range(n), 2)))

    @classmethod
    def star(cls, leaves: int) -> "Graph":
        """K_{1,leaves} with center 0."""
        return cls(leaves + 1, frozenset((0, i) for i in range(1, leaves + 1)))

    @property
    def vertices(self) -> range:
        return range(self.n)

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def check_vertex(self, v: int) -> None:
        if not 0 <= v < self.n:
            raise RangeError(f"vertex {v} outside [0, {self.n})")

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``, relabeled densely in ascending order.

        Returns the subgraph and the list mapping new ids to old ids.
        """
        old = sorted(set(keep))
        new_of = {v: i for i, v in enumerate(old)}
        edges = frozenset(
            (new_of[u], new_of[v]) for u, v in self.edges if u in new_of and v in new_of
        )
        return Graph(len(old), edges), old

    def delete(self, v: int) -> tuple["Graph", list[int]]:
        self.check_vertex(v)
        return self.induced(u for u in self.vertices if u != v)

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Apply the bijection ``v -> perm[v]``."""
        return Graph(self.n, frozenset(_norm_edge(perm[u], perm[v]) for u, v in self.edges))

    def is_connected(self) -> bool:
        return mask_connected(self.nbr_mask, self.full_mask)

    def is_clique(self, vs: Iterable[int]) -> bool:
        vs = list(vs)
        return all(self.has_edge(u, v) for u, v in combinations(vs, 2))

    def bfs(self, source: int) -> list[float]:
        dist = [math.inf] * self.n
        dist[source] = 0
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if dist[w] == math.inf:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return dist

    def shortest_path(self, s: int, t: int) -> list[int] | None:
        """Lexicographically smallest shortest s-t path (by BFS from t)."""
        dist = self.bfs(t)
        if dist[s] == math.inf:
            return None
        path = [s]
        while path[-1] != t:
            u = path[-1]
            path.append(min(w for w in self.adj[u] if dist[w] == dist[u] - 1))
        return path

    def components(self) -> list[list[int]]:
        return [mask_to_list(c) for c in mask_components(self.nbr_mask, self.full_mask)]

    def two_coloring(self) -> list[int] | None:
        """A proper 2-coloring, or None when the graph has an odd cycle."""
        color = [-1] * self.n
        for s in self.vertices:
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return color


# bitmask helpers

def to_mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def mask_reach(nbr: Sequence[int], mask: int, start: int) -> int:
    """Vertices of ``mask`` reachable from bit ``start`` inside ``mask``."""
    seen = frontier = start
    while frontier:
        grow = 0
        f = frontier
        while f:
            low = f & -f
            grow |= nbr[low.bit_length() - 1]
            f ^= low
        frontier = grow & mask & ~seen
        seen |= frontier
    return seen


def mask_connected(nbr: Sequence[int], mask: int) -> bool:
    if mask == 0:
        return True
    return mask_reach(nbr, mask, mask & -mask) == mask


def mask_components(nbr: Sequence[int], mask: int) -> list[int]:
    comps = []
    while mask:
        c = mask_reach(nbr, mask, mask & -mask)
        comps.append(c)
        mask &= ~c
    return comps


def closed_mask(g: Graph, mask: int) -> int:
    """Bitmask of N[mask]."""
    out = mask
    while mask:
        low = mask & -mask
        out |= g.nbr_mask[low.bit_length() - 1]
        mask ^= low
    return out


# predicates

def neighbors(g: Graph, v: int, closed: bool = False) -> list[int]:
    g.check_vertex(v)
    out = set(g.adj[v])
    if closed:
        out.add(v)
    return sorted(out)


def _check_set(g: Graph, vs: Iterable[int]) -> list[int]:
    vs = list(vs)
    for v in vs:
        g.check_vertex(v)
    return vs


def is_dominating(g: Graph, d: Iterable[int]) -> bool:
    d = _check_set(g, d)
    return closed_mask(g, to_mask(d)) == g.full_mask


def is_connected_induced(g: Graph, s: Iterable[int]) -> bool:
    """G[s] connected; the empty set counts as connected."""
    s = _check_set(g, s)
    return mask_connected(g.nbr_mask, to_mask(s))


def diameter(g: Graph) -> float:
    """Largest eccentricity; ``math.inf`` for disconnected graphs, 0 for n <= 1."""
    best = 0
    for v in g.vertices:
        ecc = max(g.bfs(v))
        if ecc == math.inf:
            return math.inf
        best = max(best, ecc)
    return best


def twins(g: Graph) -> list[tuple[int, int, str]]:
    """All twin pairs ``(u, v, kind)`` with u < v, kind ``"open"`` or ``"closed"``.

    The two kinds are exclusive: equal open neighborhoods force u, v nonadjacent
    and equal closed ones force them adjacent.
    """
    out = []
    for u, v in combinations(g.vertices, 2):
        if g.adj[u] == g.adj[v]:
            out.append((u, v, "open"))
        elif g.adj[u] | {u} == g.adj[v] | {v}:
            out.append((u, v, "closed"))
    return out


def is_simplicial(g: Graph, v: int) -> bool:
    return g.is_clique(g.adj[v])


def simplicial_vertices(g: Graph) -> list[int]:
    return [v for v in g.vertices if is_simplicial(g, v)]
