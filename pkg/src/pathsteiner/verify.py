"""Verification sweeps behind ``pathsteiner verify`` and the acceptance suite.

Each sweep returns a :class:`SweepResult`: a pass/fail report plus one row per
instance (or per graph), rows sorted by instance digest so the serialized
result does not depend on evaluation order or on the number of workers.
"""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Callable

from .diam2 import (
    SteinerInstance,
    _leafy_ready,
    _prunable_leaf,
    reduce_leafy,
    reduce_simplicial,
    reduce_twins,
    replace_pair,
    replacement_applies,
    solve,
)
from .formats import emit_3dm, emit_graph, emit_model, emit_terms
from .generate import (
    connected_upath_graphs,
    double_edge_swap,
    random_graph,
    random_relabel,
    random_upath_graph,
    rng_for,
)
from .graph import Graph, is_connected_induced
from .oracle import cds_min, ds_min, isomorphic, steiner_min, three_dm, verify_witness
from .reductions import (
    GadgetOutput,
    GadgetIds,
    cds_from_3dm,
    certify_cds_gadget,
    is_star_forest,
    matching_to_cds,
    steiner_from_ds,
    subdivide,
)
from .report import VerificationReport, digest
from .threedm import ThreeDMInstance, all_instances
from .treemodel import TreeModel

MAX_LISTED = 10
CORE_MIN_N = 6


@dataclass
class SweepResult:
    kind: str
    params: dict[str, Any]
    report: VerificationReport
    rows: list[dict[str, Any]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.report.passed

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "params": self.params,
            "report": self.report.to_dict(timings),
            "rows": self.rows,
        }

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"


def _start(kind: str, params: dict) -> SweepResult:
    rep = VerificationReport(instance_digest=digest(kind + json.dumps(params, sort_keys=True)))
    return SweepResult(kind, params, rep)


def _listed(items) -> str:
    items = list(items)
    more = f" (+{len(items) - MAX_LISTED} more)" if len(items) > MAX_LISTED else ""
    return ", ".join(map(str, items[:MAX_LISTED])) + more


def _map(fn, items, jobs: int):
    if jobs <= 1:
        return [fn(it) for it in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=4))


# 3DM -> CDS / Steiner


def mutated_cds_from_3dm(inst: ThreeDMInstance) -> GadgetOutput:
    """Deliberately broken builder: adds the edge y_0 z3_0.

    Used to show that the gadget sweep notices a wrong construction.
    """
    out = cds_from_3dm(inst)
    ids = GadgetIds(inst.n, inst.m)
    e = tuple(sorted((ids.v("y", 0), ids.v("z3", 0))))
    g = Graph(out.graph.n, out.graph.edges | {e})
    return GadgetOutput(g, out.model, out.terminals, out.budget, out.labels)


def _cds_gadget_row(args) -> dict:
    inst, builder = args
    out = builder(inst)
    g = out.graph
    terms = [v for v in g.vertices if g.is_clique(g.adj[v])]
    bound = out.budget
    dm = three_dm(inst)
    row: dict[str, Any] = {
        "digest": digest(emit_3dm(inst)),
        "n": inst.n,
        "m": inst.m,
        "triples": [list(s) for s in inst.triples],
        "three_dm": dm.status,
        "matching": list(dm.members),
        "bound": bound,
    }
    struct = certify_cds_gadget(inst, out)
    covering = inst.covers_all()
    # the diameter and domination checks presuppose that every element lies in a triple
    skip = set() if covering else {"diameter <= 3", "K is dominating"}
    bad = [c.name for c in struct.failures() if c.name not in skip]
    if g.is_connected():
        cw = cds_min(g)
        sw = steiner_min(g, terms)
        row["cds"], row["steiner"] = cw.objective, sw.objective
        row["cds_witness"], row["steiner_witness"] = list(cw.members), list(sw.members)
        if not verify_witness("cds", g, cw) or not verify_witness("steiner", g, sw, terms):
            bad.append("oracle witness does not re-verify")
    else:
        # no connected dominating set and no Steiner tree exist at all
        row["cds"] = row["steiner"] = None
        row["cds_witness"] = row["steiner_witness"] = []
    if dm.yes:
        d = matching_to_cds(inst, dm.members)
        if not (len(d) == bound and verify_witness("cds", g, _as_witness(d))):
            bad.append("matching does not map to a CDS of size 2m+n")
    cds_ok = row["cds"] is not None and row["cds"] <= bound
    st_ok = row["steiner"] is not None and row["steiner"] <= bound
    row["agree"] = dm.yes == cds_ok == st_ok
    if not row["agree"]:
        bad.append("3DM / CDS / Steiner disagree")
    row["structure_failures"] = bad
    return row


def _as_witness(members):
    from .oracle import Witness

    return Witness("yes", tuple(members), len(members))


def cds_gadget_sweep(
    n_max: int = 2,
    m_max: int = 4,
    builder: Callable[[ThreeDMInstance], GadgetOutput] = cds_from_3dm,
    jobs: int = 1,
) -> SweepResult:
    """Every 3DM instance with n <= n_max and 1 <= m <= m_max."""
    res = _start("cds_gadget", {"nmax": n_max, "mmax": m_max})
    t0 = time.perf_counter()
    insts = [inst for n in range(1, n_max + 1) for inst in all_instances(n, m_max)]
    rows = _map(_cds_gadget_row, [(i, builder) for i in insts], jobs)
    rows.sort(key=lambda r: r["digest"])
    res.rows = rows
    res.report.timings["cds_gadget"] = time.perf_counter() - t0
    disagree = [r["digest"] for r in rows if not r["agree"]]
    broken = [r["digest"] for r in rows if r["structure_failures"]]
    res.report.add("instances enumerated", len(rows) > 0, f"{len(rows)} instances")
    res.report.add(
        "3DM yes <=> CDS <= 2m+n <=> Steiner <= 2m+n",
        not disagree,
        f"disagreeing: {_listed(disagree)}" if disagree else "",
    )
    details = sorted({f for r in rows for f in r["structure_failures"]})
    res.report.add(
        "gadget structure",
        not broken,
        f"failing: {_listed(broken)}; checks: {'; '.join(details)}" if broken else "",
    )
    return res


# dominating set -> Steiner on bipartite graphs


def ds_gadget_sweep(graphs: int = 200, n_max: int = 8, seed: int = 0) -> SweepResult:
    res = _start("ds_gadget", {"graphs": graphs, "nmax": n_max, "seed": seed})
    t0 = time.perf_counter()
    bad: list[str] = []
    for i in range(graphs):
        rng = rng_for(seed, "ds_gadget", i)
        n = rng.randint(1, n_max)
        g = random_graph(rng, n, rng.random())
        gd = digest(emit_graph(g))
        ds = ds_min(g)
        problems = []
        if not verify_witness("ds", g, ds):
            problems.append("ds witness")
        per_k = []
        for k in range(1, n + 1):
            out = steiner_from_ds(g, k)
            h = out.graph
            if h.n != 2 * n + 1:
                problems.append(f"k={k}: |V(G')|={h.n}")
            if h.two_coloring() is None:
                problems.append(f"k={k}: G' not bipartite")
            if out.budget != k:
                problems.append(f"k={k}: parameter {out.budget}")
            st = steiner_min(h, out.terminals, budget=k)
            if st.yes and not verify_witness("steiner", h, st, out.terminals):
                problems.append(f"k={k}: steiner witness")
            if (ds.objective <= k) != st.yes:
                problems.append(f"k={k}: ds {ds.objective} vs steiner {st.status}")
            per_k.append(st.status)
        st_exact = steiner_min(steiner_from_ds(g, n).graph, range(n, 2 * n + 1))
        res.rows.append(
            {
                "digest": gd,
                "index": i,
                "n": n,
                "m": g.m,
                "ds": ds.objective,
                "steiner": st_exact.objective,
                "steiner_le_k": per_k,
                "problems": problems,
            }
        )
        if problems:
            bad.append(gd)
    res.rows.sort(key=lambda r: (r["digest"], r["index"]))
    res.report.timings["ds_gadget"] = time.perf_counter() - t0
    res.report.add(
        "ds <= k <=> steiner(G', X) <= k, G' bipartite on 2n+1 vertices, k' = k",
        not bad,
        f"failing: {_listed(bad)}" if bad else f"{graphs} graphs",
    )
    return res


# subdivision: thickness split and isomorphism transport


def _pair(rng, i: int, n_max: int) -> tuple[Graph, Graph, str]:
    mode = ("relabel", "swap", "random")[i % 3]
    # rewiring needs room to change the isomorphism class
    n = rng.randint(min(5, n_max) if mode == "swap" else 1, n_max)
    g1 = random_graph(rng, n, rng.uniform(0.2, 0.8))
    if mode == "relabel":
        g2 = random_relabel(rng, g1)
    elif mode == "swap":
        # prefer a non-isomorphic rewiring when a few attempts find one
        for _ in range(20):
            g2 = double_edge_swap(rng, g1, swaps=rng.randint(1, 3))
            if not isomorphic(g1, g2):
                break
        g2 = random_relabel(rng, g2)
    else:
        g2 = random_graph(rng, n, rng.uniform(0.2, 0.8))
    return g1, g2, mode


def thickness_sweep(
    graphs: int = 100, n_max: int = 7, pairs: int = 50, pair_n_max: int = 6, seed: int = 0
) -> SweepResult:
    res = _start(
        "thickness",
        {"graphs": graphs, "nmax": n_max, "pairs": pairs, "pair_nmax": pair_n_max, "seed": seed},
    )
    t0 = time.perf_counter()
    split_bad = []
    for i in range(graphs):
        rng = rng_for(seed, "subdivision", i)
        g = random_graph(rng, rng.randint(1, n_max), rng.random())
        w = subdivide(g)
        ok = (
            w.sub.n == g.n + g.m
            and len(w.sub.edges) == 2 * g.m
            and not (w.part1 & w.part2)
            and (w.part1 | w.part2) == w.sub.edges
            and is_star_forest(w.sub.n, w.part1)
            and is_star_forest(w.sub.n, w.part2)
        )
        d = digest(emit_graph(g))
        res.rows.append({"digest": d, "kind": "split", "n": g.n, "m": g.m, "ok": ok})
        if not ok:
            split_bad.append(d)
    iso_bad = []
    same_degree_noniso = 0
    for i in range(pairs):
        rng = rng_for(seed, "iso", i)
        g1, g2, mode = _pair(rng, i, pair_n_max)
        a = isomorphic(g1, g2)
        b = isomorphic(subdivide(g1).sub, subdivide(g2).sub)
        degs_equal = sorted(map(g1.degree, g1.vertices)) == sorted(map(g2.degree, g2.vertices))
        same_degree_noniso += degs_equal and not a
        d = digest(emit_graph(g1) + emit_graph(g2))
        res.rows.append(
            {"digest": d, "kind": "iso", "mode": mode, "n": g1.n, "iso": a, "iso_sub": b, "ok": a == b}
        )
        if a != b:
            iso_bad.append(d)
    res.rows.sort(key=lambda r: (r["digest"], r["kind"]))
    res.report.timings["thickness"] = time.perf_counter() - t0
    res.report.add(
        "s(G) edges split into two star forests",
        not split_bad,
        f"failing: {_listed(split_bad)}" if split_bad else f"{graphs} graphs",
    )
    res.report.add(
        "G1 ~ G2 <=> s(G1) ~ s(G2)",
        not iso_bad,
        f"failing: {_listed(iso_bad)}" if iso_bad else f"{pairs} pairs",
    )
    res.report.add(
        "pairs include same-degree-sequence non-isomorphic graphs",
        pairs == 0 or same_degree_noniso > 0,
        f"{same_degree_noniso} such pairs",
    )
    return res


# diameter-2 solver against the exhaustive oracle


def terminal_sets(n: int, cap: int, rng) -> list[tuple[int, ...]]:
    """All terminal sets with |X| >= 2, or a seeded sample of ``cap`` of them."""
    sets = [c for k in range(2, n + 1) for c in combinations(range(n), k)]
    if len(sets) > cap:
        sets = sorted(rng.sample(sets, cap), key=lambda s: (len(s), s))
    return sets


def _solver_row(args) -> dict:
    g, model, cap, seed = args
    gd = digest(emit_graph(g) + emit_model(model))
    rng = rng_for(seed, "solver", gd)
    mismatches, unverified = [], []
    paths: dict[str, int] = {}
    witnesses = []
    for x in terminal_sets(g.n, cap, rng):
        w, trace = solve(SteinerInstance(g, model, x))
        witnesses.append(f"{list(x)} {list(w.members)}\n")
        o = steiner_min(g, x)
        key = trace.base_case or "core"
        paths[key] = paths.get(key, 0) + 1
        if w.objective != o.objective:
            mismatches.append([list(x), w.objective, o.objective])
        if not is_connected_induced(g, sorted(set(x) | set(w.members))) or set(x) & set(w.members):
            unverified.append(list(x))
    return {
        "digest": gd,
        "n": g.n,
        "m": g.m,
        "terminal_sets": sum(paths.values()),
        "paths": dict(sorted(paths.items())),
        # one hash over every (X, S) pair keeps the file small but pins the witnesses
        "witness_digest": digest("".join(witnesses)),
        "mismatches": mismatches,
        "unverified": unverified,
    }


def solver_sweep(n_max: int = 8, sample_cap: int = 500, seed: int = 0, jobs: int = 1) -> SweepResult:
    res = _start("solver", {"nmax": n_max, "sample_cap": sample_cap, "seed": seed})
    t0 = time.perf_counter()
    levels = connected_upath_graphs(n_max, max_diameter=2)
    items = [(g, model, sample_cap, seed) for n in sorted(levels) for g, model in levels[n]]
    res.report.timings["enumerate"] = time.perf_counter() - t0
    res.rows = sorted(_map(_solver_row, items, jobs), key=lambda r: r["digest"])
    res.report.timings["solve"] = time.perf_counter() - t0
    counts = {n: len(levels[n]) for n in sorted(levels)}
    total = sum(r["terminal_sets"] for r in res.rows)
    res.report.add("graphs enumerated", len(items) > 0, f"per n: {counts}")
    wrong = [r["digest"] for r in res.rows if r["mismatches"]]
    res.report.add(
        "solve objective = oracle objective",
        not wrong,
        f"failing graphs: {_listed(wrong)}" if wrong else f"{total} instances",
    )
    unver = [r["digest"] for r in res.rows if r["unverified"]]
    res.report.add(
        "lifted witness connects X on the input graph",
        not unver,
        f"failing graphs: {_listed(unver)}" if unver else "",
    )
    core = sum(r["paths"].get("core", 0) for r in res.rows)
    # below 6 vertices every instance is settled by a base case or a reduction
    need = n_max >= CORE_MIN_N
    res.report.add("clique-cover core exercised", core > 0 or not need, f"{core} instances")
    return res


# reduction lemmas


def _random_instance(rng, max_diameter=2, n_lo=4, n_hi=10, duplicate=False):
    while True:
        nv = rng.randint(n_lo, n_hi)
        got = random_upath_graph(rng, nv, rng.randint(2, 7), max_diameter=max_diameter)
        if got is None:
            continue
        g, model = got
        if duplicate:
            # copying a path gives a closed twin
            v = rng.randrange(g.n)
            model = TreeModel(model.host, model.paths + (model.paths[v],))
            g = model.realized_graph()
        return g, model


def _instance_text(inst: SteinerInstance) -> str:
    return emit_graph(inst.graph) + emit_model(inst.model) + emit_terms(inst.terminals)


def _st(inst: SteinerInstance):
    return steiner_min(inst.graph, inst.terminals).objective


def _twin_pair(rng):
    g, model = _random_instance(rng, duplicate=rng.random() < 0.7)
    x = rng.sample(range(g.n), rng.randint(3, g.n))
    before = SteinerInstance(g, model, x)
    after, removed = reduce_twins(before)
    return before, after, removed


def _simplicial_pair(rng):
    g, model = _random_instance(rng)
    x = rng.sample(range(g.n), rng.randint(1, max(1, g.n - 2)))
    before = SteinerInstance(g, model, x)
    after, removed = reduce_simplicial(before)
    return before, after, removed


def _leafy_pair(rng):
    g, model = _random_instance(rng, n_hi=11)
    singles = [v for v in g.vertices if len(model.paths[v]) == 1]
    others = [v for v in g.vertices if v not in singles]
    x = singles + rng.sample(others, rng.randint(0, len(others)))
    inst = SteinerInstance(g, model, x)
    while True:
        inst, a = reduce_twins(inst)
        inst, b = reduce_simplicial(inst)
        if not a and not b:
            break
    if len(inst.terminals) < 2:
        return inst, inst, []
    inst = inst.minimalized()
    if not _leafy_ready(inst) or _prunable_leaf(inst) is None:
        return inst, inst, []
    after, removed = reduce_leafy(inst)
    return inst, after, removed


LEMMA_MAKERS = {"twins": _twin_pair, "simplicial": _simplicial_pair, "leafy": _leafy_pair}


def _lemma_rows(name: str, trials: int, seed: int, max_attempts: int):
    maker = LEMMA_MAKERS[name]
    pairs, attempts, bad = [], 0, []
    while len(pairs) < trials and attempts < max_attempts:
        rng = rng_for(seed, "lemma", name, attempts)
        attempts += 1
        before, after, removed = maker(rng)
        if not removed:
            continue
        a, b = _st(before), _st(after)
        d = digest(_instance_text(before))
        pairs.append(f"{d}:{a}:{b}")
        if a != b:
            bad.append(d)
    return pairs, attempts, bad


def _feasible_s(rng, g: Graph, x: list[int]) -> list[int]:
    """Random feasible Steiner set: start from V - X and drop vertices."""
    s = [v for v in g.vertices if v not in set(x)]
    rng.shuffle(s)
    keep = list(s)
    for v in s:
        if rng.random() < 0.3:
            continue
        trial = [u for u in keep if u != v]
        if is_connected_induced(g, sorted(set(trial) | set(x))):
            keep = trial
    return sorted(keep)


def _replacement_trials(trials: int, seed: int, max_attempts: int):
    done, attempts, bad, fingerprints = 0, 0, [], []
    while done < trials and attempts < max_attempts:
        rng = rng_for(seed, "replacement", attempts)
        attempts += 1
        g, model = _random_instance(rng, max_diameter=None, n_lo=5, n_hi=10)
        x = sorted(rng.sample(range(g.n), rng.randint(1, g.n - 2)))
        s = _feasible_s(rng, g, x)
        quads = [
            (u, v, y, z)
            for u, v in combinations(s, 2)
            for y, z in g.sorted_edges()
            if replacement_applies(g, s, u, v, y, z)
        ]
        if not quads:
            continue
        done += 1
        d = digest(emit_graph(g) + emit_terms(x) + emit_terms(s))
        fail = [q for q in quads if not is_connected_induced(g, sorted(set(replace_pair(s, x, *q)) | set(x)))]
        fingerprints.append(f"{d}:{len(quads)}")
        if fail:
            bad.append(d)
    return fingerprints, attempts, bad


def lemma_sweep(trials: int = 1000, seed: int = 0, max_attempts: int | None = None) -> SweepResult:
    res = _start("lemmas", {"trials": trials, "seed": seed})
    cap = max_attempts if max_attempts is not None else 40 * trials + 100
    for name in ("twins", "simplicial", "leafy"):
        t0 = time.perf_counter()
        pairs, attempts, bad = _lemma_rows(name, trials, seed, cap)
        res.report.timings[name] = time.perf_counter() - t0
        res.rows.append(
            {
                "digest": digest("\n".join(pairs)),
                "lemma": name,
                "pairs": len(pairs),
                "attempts": attempts,
                "failures": bad,
            }
        )
        res.report.add(f"{name}: {trials} pairs generated", len(pairs) == trials, f"{len(pairs)} in {attempts} attempts")
        res.report.add(
            f"{name}: reduction preserves ST(G, X)",
            not bad,
            f"failing: {_listed(bad)}" if bad else "",
        )
    t0 = time.perf_counter()
    prints, attempts, bad = _replacement_trials(trials, seed, cap)
    res.report.timings["replacement"] = time.perf_counter() - t0
    res.rows.append(
        {
            "digest": digest("\n".join(prints)),
            "lemma": "replacement",
            "pairs": len(prints),
            "attempts": attempts,
            "failures": bad,
        }
    )
    res.report.add(
        f"replacement: {trials} trials with an applicable quadruple",
        len(prints) == trials,
        f"{len(prints)} in {attempts} attempts",
    )
    res.report.add(
        "replacement keeps S feasible",
        not bad,
        f"failing: {_listed(bad)}" if bad else "",
    )
    res.rows.sort(key=lambda r: r["digest"])
    return res
