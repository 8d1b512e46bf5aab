"""Polynomial Steiner Tree solver for undirected path graphs of diameter <= 2.

Pipeline: base cases (|X| <= 2 or G[X] connected), then twin removal,
deletion of non-terminal simplicial vertices, model minimalization and
pruning of leafy terminals sitting on a leaf that another terminal's path also
reaches, all iterated to a joint fixpoint.  On the reduced instance a minimum
Steiner set is a clique outside X dominating the leafy vertices; by the Helly
property such a clique lives inside one host bag, and inside bag ``t`` the
problem is a minimum edge cover of the host leaves by the candidate paths
through ``t`` (each covers at most its two endpoints), solved by maximum
matching.

Every removal deletes a vertex that never appears in the returned Steiner
set, so a reduced-instance witness lifts to the input unchanged (up to the
vertex relabeling kept in ``labels``).
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from .errors import ClassError, ContractError, InstanceError, IntegrityError
from .graph import (
    Graph,
    diameter,
    is_connected_induced,
    is_simplicial,
    mask_connected,
    to_mask,
    twins,
)
from .oracle import Witness, max_matching
from .treemodel import (
    TreeModel,
    is_minimal,
    leafy_vertices,
    make_minimal_map,
    node_set,
    validate,
)


@dataclass(frozen=True)
class SteinerInstance:
    graph: Graph
    model: TreeModel | None
    terminals: tuple[int, ...]
    budget: int | None = None
    # original vertex id of each current vertex, and original node id of each host node
    labels: tuple[int, ...] | None = None
    node_labels: tuple[int, ...] | None = None

    def __post_init__(self):
        terms = tuple(sorted(set(self.terminals)))
        for v in terms:
            self.graph.check_vertex(v)
        object.__setattr__(self, "terminals", terms)
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(range(self.graph.n)))
        if self.model is not None:
            if self.model.n != self.graph.n:
                raise InstanceError("model and graph disagree on the vertex count")
            if self.node_labels is None:
                object.__setattr__(self, "node_labels", tuple(range(self.model.n_nodes)))

    def delete(self, v: int) -> "SteinerInstance":
        return self.restrict([u for u in self.graph.vertices if u != v])

    def restrict(self, keep) -> "SteinerInstance":
        """Induced sub-instance on ``keep``; terminals outside it are dropped."""
        keep = sorted(keep)
        g, old = self.graph.induced(keep)
        new_of = {u: i for i, u in enumerate(old)}
        return replace(
            self,
            graph=g,
            model=None if self.model is None else self.model.restrict(keep),
            terminals=tuple(new_of[x] for x in self.terminals if x in new_of),
            labels=tuple(self.labels[u] for u in old),
        )

    def minimalized(self) -> "SteinerInstance":
        model, survivors = make_minimal_map(self.model)
        return replace(
            self, model=model, node_labels=tuple(self.node_labels[t] for t in survivors)
        )


@dataclass
class SolveTrace:
    removed_twins: list[int] = field(default_factory=list)
    removed_simplicials: list[int] = field(default_factory=list)
    removed_leafy: list[int] = field(default_factory=list)
    # every removal in order, as (kind, original vertex id)
    steps: list[tuple[str, int]] = field(default_factory=list)
    base_case: str | None = None
    chosen_node: int | None = None
    witness: Witness | None = None
    reduced: SteinerInstance | None = field(default=None, repr=False)

    def record(self, kind: str, labels) -> None:
        target = {
            "twin": self.removed_twins,
            "simplicial": self.removed_simplicials,
            "leafy": self.removed_leafy,
        }[kind]
        for v in labels:
            target.append(v)
            self.steps.append((kind, v))

    def to_dict(self) -> dict:
        return {
            "removed_twins": self.removed_twins,
            "removed_simplicials": self.removed_simplicials,
            "removed_leafy": self.removed_leafy,
            "steps": [list(s) for s in self.steps],
            "base_case": self.base_case,
            "chosen_node": self.chosen_node,
            "witness": None if self.witness is None else self.witness.to_dict(),
        }


# reductions

def reduce_twins(inst: SteinerInstance) -> tuple[SteinerInstance, list[int]]:
    """Delete one twin at a time while |X| >= 3; a non-terminal twin goes first."""
    removed = []
    while len(inst.terminals) >= 3:
        pairs = twins(inst.graph)
        if not pairs:
            break
        a, b, _ = pairs[0]
        x = set(inst.terminals)
        victim = a if (b in x and a not in x) else b
        removed.append(inst.labels[victim])
        inst = inst.delete(victim)
    return inst, removed


def reduce_simplicial(inst: SteinerInstance) -> tuple[SteinerInstance, list[int]]:
    """Delete non-terminal simplicial vertices until none is left."""
    removed = []
    while True:
        x = set(inst.terminals)
        victim = next(
            (v for v in inst.graph.vertices if v not in x and is_simplicial(inst.graph, v)),
            None,
        )
        if victim is None:
            return inst, removed
        removed.append(inst.labels[victim])
        inst = inst.delete(victim)


def _leafy_ready(inst: SteinerInstance, strict: bool = True) -> bool:
    """Minimal model, no twins (checked when ``strict``), every leafy vertex a terminal."""
    if not is_minimal(inst.model) or (strict and twins(inst.graph)):
        return False
    return set(leafy_vertices(inst.model).leafy) <= set(inst.terminals)


def _prunable_leaves(inst: SteinerInstance) -> list[int]:
    """Host leaves lying on the path of some non-leafy terminal."""
    rep = leafy_vertices(inst.model)
    leaves = set(inst.model.host_leaves())
    hit: set[int] = set()
    for x in inst.terminals:
        if x not in rep.leaf_of:
            hit |= inst.model.paths[x] & leaves
    return sorted(hit)


def _prunable_leaf(inst: SteinerInstance) -> int | None:
    hit = _prunable_leaves(inst)
    return hit[0] if hit else None


def reduce_leafy(inst: SteinerInstance, strict: bool = True) -> tuple[SteinerInstance, list[int]]:
    """Prune leafy terminals whose leaf is also reached by a non-leafy terminal.

    Works in rounds: every prunable leaf of the current model loses its
    leafy vertex, then the model is re-minimalized.  Each deletion is
    justified by a non-leafy terminal x that survives the round, because
    N[u] lies inside N[x].  Stops early (without error) once a round creates
    twins or a non-terminal leafy vertex; the caller's fixpoint loop handles
    those.  ``strict=False`` skips the twin-freeness precondition.
    """
    if inst.model is None:
        raise ContractError("reduce_leafy needs a tree model")
    if not _leafy_ready(inst, strict):
        raise ContractError("reduce_leafy needs a minimal, twin-free model with leafy vertices in X")
    removed = []
    while hit := _prunable_leaves(inst):
        rep = leafy_vertices(inst.model)
        victims = []
        for leaf in hit:
            at_leaf = [u for u in rep.leafy if rep.leaf_of[u] == leaf]
            if len(at_leaf) != 1:
                raise ContractError(f"leaf {leaf} carries {len(at_leaf)} leafy vertices")
            victims.append(at_leaf[0])
        removed += [inst.labels[u] for u in victims]
        keep = [v for v in inst.graph.vertices if v not in set(victims)]
        inst = inst.restrict(keep).minimalized()
        if not _leafy_ready(inst, strict):
            break
    return inst, removed


# core

def _cover_size(leaves: set[int], covers: dict[int, frozenset[int]]) -> int | None:
    """Fewest cover sets (each of size <= 2 once restricted) hitting every leaf."""
    if not leaves:
        return 0
    restricted = {c: s & leaves for c, s in covers.items()}
    if set().union(*restricted.values()) != leaves:
        return None
    ids = sorted(leaves)
    pos = {t: i for i, t in enumerate(ids)}
    edges = {
        tuple(sorted(pos[t] for t in s)) for s in restricted.values() if len(s) == 2
    }
    nu = len(max_matching(Graph(len(ids), frozenset(edges))))
    return len(ids) - nu


def _lexmin_cover(leaves: set[int], covers: dict[int, frozenset[int]]) -> list[int] | None:
    k = _cover_size(leaves, covers)
    if k is None:
        return None
    chosen: list[int] = []
    remaining = set(leaves)
    pool = sorted(covers)
    while len(chosen) < k:
        need = k - len(chosen) - 1
        for i, c in enumerate(pool):
            rest = remaining - covers[c]
            later = {d: covers[d] for d in pool[i + 1 :]}
            size = _cover_size(rest, later)
            if size is not None and size <= need:
                chosen.append(c)
                remaining = rest
                pool = pool[i + 1 :]
                break
        else:
            raise IntegrityError("lexicographic cover reconstruction failed")
    return chosen


def check_core_preconditions(inst: SteinerInstance, strict: bool = True) -> None:
    g, x = inst.graph, set(inst.terminals)
    if inst.model is None:
        raise ContractError("core step needs a tree model")
    if not is_minimal(inst.model):
        raise ContractError("model is not minimal")
    if strict and twins(g):
        raise ContractError("graph has twins")
    if not set(leafy_vertices(inst.model).leafy) <= x:
        raise ContractError("a leafy vertex is not a terminal")
    if _prunable_leaf(inst) is not None:
        raise ContractError("a non-leafy terminal still reaches a host leaf")
    if diameter(g) > 2:
        raise ContractError("diameter exceeds 2")
    if len(x) < 3 or mask_connected(g.nbr_mask, to_mask(x)):
        raise ContractError("instance is a base case")


def min_clique_dominating_leafy(
    inst: SteinerInstance, strict: bool = True
) -> tuple[Witness, int | None]:
    """Minimum clique outside X dominating the leafy vertices.

    Returns the witness (current vertex ids) and the chosen host node as an
    original node label.  Ties: smaller set, then lexicographically smaller
    set, then smaller node.  ``strict=False`` skips the twin-freeness check.
    """
    check_core_preconditions(inst, strict)
    m = inst.model
    x = set(inst.terminals)
    leaves = set(m.host_leaves())
    best = None
    for t in m.host.vertices:
        covers = {c: m.paths[c] & leaves for c in node_set(m, t) if c not in x}
        s = _lexmin_cover(leaves, covers)
        if s is None:
            continue
        key = (len(s), s, inst.node_labels[t])
        if best is None or key < best:
            best = key
    if best is None:
        return Witness("no", (), None), None
    size, s, node = best
    return Witness("yes", tuple(s), size), node


# driver

def _base_case(inst: SteinerInstance) -> tuple[str, list[int]] | None:
    g, x = inst.graph, inst.terminals
    if len(x) == 1:
        return "single", []
    if mask_connected(g.nbr_mask, to_mask(x)):
        return "connected", []
    if len(x) == 2:
        path = g.shortest_path(x[0], x[1])
        return "pair", path[1:-1]
    return None


def check_instance(inst: SteinerInstance) -> None:
    g = inst.graph
    if not inst.terminals:
        raise InstanceError("terminal set is empty")
    if not g.is_connected():
        raise InstanceError("graph is disconnected")
    if diameter(g) > 2:
        raise ClassError(f"diameter {diameter(g)} exceeds 2; use the exhaustive oracle")
    if inst.model is None:
        raise InstanceError("the diameter-2 solver needs a path tree model")
    rep = validate(inst.model, g, require_paths=True)
    if not rep.passed:
        raise InstanceError(
            "invalid path model: " + "; ".join(f"{c.name}: {c.detail}" for c in rep.failures())
        )


def solve(inst: SteinerInstance) -> tuple[Witness, SolveTrace]:
    """Exact ST(G, X) on an undirected path graph of diameter <= 2.

    The returned witness is re-verified on the input graph; the status
    compares the optimum against ``inst.budget`` when one is given.
    """
    check_instance(inst)
    trace = SolveTrace()
    work = replace(inst, labels=tuple(range(inst.graph.n)))
    while True:
        base = _base_case(work)
        if base is not None:
            trace.base_case, local = base
            break
        work, rem = reduce_twins(work)
        if rem:
            trace.record("twin", rem)
            continue
        work, rem = reduce_simplicial(work)
        if rem:
            trace.record("simplicial", rem)
            continue
        work = work.minimalized()
        work, rem = reduce_leafy(work)
        if rem:
            trace.record("leafy", rem)
            continue
        core, trace.chosen_node = min_clique_dominating_leafy(work)
        if not core.yes:
            raise IntegrityError("no dominating clique on a reduced instance")
        local = list(core.members)
        break
    trace.reduced = work
    steiner = sorted(work.labels[v] for v in local)
    x = set(inst.terminals)
    if set(steiner) & x or not is_connected_induced(inst.graph, sorted(x | set(steiner))):
        raise IntegrityError(f"lifted Steiner set {steiner} does not connect the terminals")
    trace.witness = Witness("yes", tuple(steiner), len(steiner))
    if inst.budget is not None and len(steiner) > inst.budget:
        return Witness("no", (), len(steiner)), trace
    return trace.witness, trace


def replay(inst: SteinerInstance, trace: SolveTrace) -> SteinerInstance:
    """Re-apply the recorded removals to the input instance."""
    work = replace(inst, labels=tuple(range(inst.graph.n)))
    for _, v in trace.steps:
        work = work.delete(work.labels.index(v))
    return work


# exchange argument

def replacement_applies(g: Graph, s, u: int, v: int, y: int, z: int) -> bool:
    """u, v in S nonadjacent; y, z adjacent; N(u) u N(v) within N(y) u N(z)."""
    s = set(s)
    return (
        u in s
        and v in s
        and u != v
        and not g.has_edge(u, v)
        and g.has_edge(y, z)
        and (g.adj[u] | g.adj[v]) <= (g.adj[y] | g.adj[z])
    )


def replace_pair(s, x, u: int, v: int, y: int, z: int) -> list[int]:
    """((S - {u, v}) u {y, z}) - X."""
    return sorted(((set(s) - {u, v}) | {y, z}) - set(x))
