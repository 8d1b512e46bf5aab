"""Line-oriented instance files (``#`` comments, 0-indexed ids).

graph       ``p graph <n> <m>`` then m lines ``e <u> <v>``
tree model  ``p model <n> <t>``, t-1 lines ``t <a> <b>``, n lines ``v <vertex> <node>...``
3DM         ``p 3dm <n> <m>`` then m lines ``s <p> <q> <r>``
terminals   ``x <v1> <v2> ...`` and optionally ``k <budget>``

Emitters write the canonical form: header first, records sorted, no comments.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError
from .graph import Graph
from .threedm import ThreeDMInstance
from .treemodel import TreeModel, is_host_path, is_tree


def _records(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _ints(tokens, no: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", no) from None


def _header(recs, kind: str) -> list[int]:
    try:
        no, tok = next(recs)
    except StopIteration:
        raise ParseError(f"missing 'p {kind}' header") from None
    if len(tok) < 2 or tok[0] != "p" or tok[1] != kind:
        raise ParseError(f"expected 'p {kind}' header", no)
    vals = _ints(tok[2:], no)
    if len(vals) != 2 or min(vals) < 0:
        raise ParseError(f"'p {kind}' takes two nonnegative counts", no)
    return vals


def parse_graph(text: str) -> Graph:
    recs = _records(text)
    n, m = _header(recs, "graph")
    seen: set[tuple[int, int]] = set()
    for no, tok in recs:
        if tok[0] != "e" or len(tok) != 3:
            raise ParseError("expected 'e <u> <v>'", no)
        u, v = _ints(tok[1:], no)
        for w in (u, v):
            if not 0 <= w < n:
                raise ParseError(f"vertex {w} outside [0, {n})", no)
        if u == v:
            raise ParseError(f"self-loop at {u}", no)
        e = (min(u, v), max(u, v))
        if e in seen:
            raise ParseError(f"duplicate edge {e}", no)
        seen.add(e)
    if len(seen) != m:
        raise ParseError(f"header announces {m} edges, found {len(seen)}")
    return Graph(n, frozenset(seen))


def emit_graph(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m}"] + [f"e {u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def parse_model(text: str, require_paths: bool = True) -> TreeModel:
    recs = _records(text)
    n, t = _header(recs, "model")
    if t < 1:
        raise ParseError("a tree model needs at least one node")
    tree: list[tuple[int, int]] = []
    paths: dict[int, frozenset[int]] = {}
    lines_of: dict[int, int] = {}
    for no, tok in recs:
        if tok[0] == "t" and len(tok) == 3:
            a, b = _ints(tok[1:], no)
            if not (0 <= a < t and 0 <= b < t) or a == b:
                raise ParseError(f"bad tree edge {a} {b}", no)
            tree.append((a, b))
        elif tok[0] == "v" and len(tok) >= 3:
            v, *nodes = _ints(tok[1:], no)
            if not 0 <= v < n:
                raise ParseError(f"vertex {v} outside [0, {n})", no)
            if v in paths:
                raise ParseError(f"vertex {v} assigned twice", no)
            if any(not 0 <= x < t for x in nodes) or len(set(nodes)) != len(nodes):
                raise ParseError(f"vertex {v}: bad node list", no)
            paths[v] = frozenset(nodes)
            lines_of[v] = no
        else:
            raise ParseError("expected 't <a> <b>' or 'v <vertex> <node>...'", no)
    if len(tree) != t - 1:
        raise ParseError(f"a tree on {t} nodes needs {t - 1} edges, found {len(tree)}")
    if len(set(map(lambda e: (min(e), max(e)), tree))) != len(tree):
        raise ParseError("duplicate tree edge")
    host = Graph(t, frozenset(tree))
    if not is_tree(host):
        raise ParseError("host edges do not form a tree")
    missing = sorted(set(range(n)) - set(paths))
    if missing:
        raise ParseError(f"no node set for vertices {missing}")
    if require_paths:
        for v in sorted(paths):
            if not is_host_path(host, paths[v]):
                raise ParseError(f"vertex {v}: node set is not a path of the host", lines_of[v])
    return TreeModel(host, tuple(paths[v] for v in range(n)))


def emit_model(m: TreeModel) -> str:
    lines = [f"p model {m.n} {m.n_nodes}"]
    lines += [f"t {a} {b}" for a, b in m.host.sorted_edges()]
    lines += [f"v {v} " + " ".join(map(str, sorted(p))) for v, p in enumerate(m.paths)]
    return "\n".join(lines) + "\n"


def parse_3dm(text: str) -> ThreeDMInstance:
    recs = _records(text)
    n, m = _header(recs, "3dm")
    triples = []
    for no, tok in recs:
        if tok[0] != "s" or len(tok) != 4:
            raise ParseError("expected 's <p> <q> <r>'", no)
        s = tuple(_ints(tok[1:], no))
        if any(not 0 <= i < n for i in s):
            raise ParseError(f"triple {s} has an index outside [0, {n})", no)
        if s in triples:
            raise ParseError(f"duplicate triple {s}", no)
        triples.append(s)
    if len(triples) != m:
        raise ParseError(f"header announces {m} triples, found {len(triples)}")
    return ThreeDMInstance(n, tuple(triples))


def emit_3dm(inst: ThreeDMInstance) -> str:
    lines = [f"p 3dm {inst.n} {inst.m}"] + [f"s {p} {q} {r}" for p, q, r in inst.triples]
    return "\n".join(lines) + "\n"


def parse_terms(text: str) -> tuple[tuple[int, ...], int | None]:
    terms: tuple[int, ...] | None = None
    budget = None
    for no, tok in _records(text):
        if tok[0] == "x":
            if terms is not None:
                raise ParseError("second 'x' line", no)
            vals = _ints(tok[1:], no)
            if len(set(vals)) != len(vals):
                raise ParseError("repeated terminal", no)
            terms = tuple(vals)
        elif tok[0] == "k" and len(tok) == 2:
            if budget is not None:
                raise ParseError("second 'k' line", no)
            (budget,) = _ints(tok[1:], no)
            if budget < 0:
                raise ParseError("budget must be nonnegative", no)
        else:
            raise ParseError("expected 'x <v>...' or 'k <int>'", no)
    return (terms or ()), budget


def emit_terms(terms, budget: int | None = None) -> str:
    lines = ["x " + " ".join(map(str, sorted(terms))) if terms else "x"]
    if budget is not None:
        lines.append(f"k {budget}")
    return "\n".join(lines) + "\n"


def read(path) -> str:
    return Path(path).read_text()
