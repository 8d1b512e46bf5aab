"""Command-line workbench: ``generate``, ``solve``, ``verify``, ``report``.

Exit codes: 0 success, 1 verification failure, 2 parse/instance error,
3 size/class error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import formats
from .diam2 import SteinerInstance, solve
from .errors import ClassError, InstanceError, SizeError, WorkbenchError
from .generate import random_graph, random_upath_graph, rng_for
from .graph import Graph, diameter
from .oracle import SEARCH_CAP, cds_min, ds_min, steiner_min, verify_witness
from .reductions import cds_from_3dm, steiner_from_3dm, steiner_from_ds, subdivide
from .report import digest
from .threedm import random_instance
from .treemodel import SEARCH_CAP as MODEL_SEARCH_CAP
from .treemodel import search_model, validate
from .verify import (
    SweepResult,
    cds_gadget_sweep,
    ds_gadget_sweep,
    lemma_sweep,
    mutated_cds_from_3dm,
    solver_sweep,
    thickness_sweep,
)

# JSON document printed by ``solve --format json``
SOLVE_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": [
        "instance_digest",
        "problem",
        "algorithm",
        "status",
        "objective",
        "witness",
        "budget",
        "verified",
        "trace",
    ],
    "additionalProperties": False,
    "properties": {
        "instance_digest": {"type": "string", "pattern": "^[0-9a-f]{16}$"},
        "problem": {"enum": ["steiner", "cds", "ds"]},
        "algorithm": {"enum": ["diam2", "oracle"]},
        "status": {"enum": ["yes", "no"]},
        "objective": {"type": ["integer", "null"], "minimum": 0},
        "witness": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "budget": {"type": ["integer", "null"], "minimum": 0},
        "verified": {"type": "boolean"},
        "trace": {"type": ["object", "null"]},
    },
}


def _write(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    print(path)


def _emit_single(args, text: str) -> None:
    if args.out:
        _write(Path(args.out), text)
    else:
        sys.stdout.write(text)


def _need_out(args) -> Path:
    if not args.out:
        raise InstanceError(f"generate {args.kind} writes several files; pass --out PREFIX")
    return Path(args.out)


def _need_from(args) -> str:
    if not args.source:
        raise InstanceError(f"generate {args.kind} needs --from FILE")
    return formats.read(args.source)


def _write_gadget(prefix: Path, out, with_terms: bool) -> None:
    _write(prefix.with_suffix(".graph"), formats.emit_graph(out.graph))
    if out.model is not None:
        _write(prefix.with_suffix(".model"), formats.emit_model(out.model))
    _write(
        prefix.with_suffix(".terms"),
        formats.emit_terms(out.terminals if with_terms else (), out.budget),
    )
    _write(prefix.with_suffix(".labels"), "".join(f"{i} {lab}\n" for i, lab in enumerate(out.labels)))


def cmd_generate(args) -> int:
    kind = args.kind
    if kind == "3dm":
        if args.n < 1 or args.m < 1:
            raise InstanceError("--n and --m must be positive")
        inst = random_instance(rng_for(args.seed, "3dm"), args.n, args.m)
        _emit_single(args, formats.emit_3dm(inst))
    elif kind == "graph":
        if args.n < 0 or not 0 <= args.p <= 1:
            raise InstanceError("need --n >= 0 and 0 <= --p <= 1")
        _emit_single(args, formats.emit_graph(random_graph(rng_for(args.seed, "graph"), args.n, args.p)))
    elif kind == "upath":
        if args.n < 1 or args.nodes < 1:
            raise InstanceError("--n and --nodes must be positive")
        prefix = _need_out(args)
        rng = rng_for(args.seed, "upath")
        got = random_upath_graph(rng, args.n, args.nodes, max_diameter=args.max_diameter)
        if got is None:
            raise InstanceError("no connected instance found with these parameters")
        g, model = got
        k = args.terminals if args.terminals is not None else max(1, g.n // 2)
        if not 1 <= k <= g.n:
            raise InstanceError("--terminals must lie in [1, n]")
        terms = sorted(rng.sample(range(g.n), k))
        _write(prefix.with_suffix(".graph"), formats.emit_graph(g))
        _write(prefix.with_suffix(".model"), formats.emit_model(model))
        _write(prefix.with_suffix(".terms"), formats.emit_terms(terms))
    elif kind in ("gadget-cds", "gadget-steiner"):
        inst = formats.parse_3dm(_need_from(args))
        prefix = _need_out(args)
        build = cds_from_3dm if kind == "gadget-cds" else steiner_from_3dm
        if args.inject_bug:
            build = mutated_cds_from_3dm
        _write_gadget(prefix, build(inst), with_terms=kind == "gadget-steiner")
    elif kind == "gadget-ds":
        g = formats.parse_graph(_need_from(args))
        if args.k is None or args.k < 0:
            raise InstanceError("gadget-ds needs --k >= 0")
        _write_gadget(_need_out(args), steiner_from_ds(g, args.k), with_terms=True)
    elif kind == "subdivision":
        g = formats.parse_graph(_need_from(args))
        prefix = _need_out(args)
        w = subdivide(g)
        _write(prefix.with_suffix(".graph"), formats.emit_graph(w.sub))
        for name, part in (("h1", w.part1), ("h2", w.part2)):
            _write(prefix.with_suffix(f".{name}.graph"), formats.emit_graph(Graph(w.sub.n, part)))
    return 0


# solve


def _load_instance(args):
    g = formats.parse_graph(formats.read(args.graph))
    terms, budget = formats.parse_terms(formats.read(args.terms)) if args.terms else ((), None)
    if args.budget is not None:
        budget = args.budget
    model = formats.parse_model(formats.read(args.model)) if args.model else None
    if model is not None and model.n != g.n:
        raise InstanceError(f"model has {model.n} vertices, graph has {g.n}")
    for v in terms:
        if not 0 <= v < g.n:
            raise InstanceError(f"terminal {v} outside [0, {g.n})")
    return g, model, tuple(terms), budget


def _diam2_ready(g: Graph, model, terms) -> tuple[bool, object]:
    """Whether the diameter-2 solver applies, finding a model if none was given."""
    if not terms or not g.is_connected() or diameter(g) > 2:
        return False, model
    if model is None:
        if g.n > MODEL_SEARCH_CAP:
            return False, None
        model = search_model(g)
        return model is not None, model
    return validate(model, g).passed, model


def run_solve(g: Graph, model, terms, budget, problem: str, algo: str) -> dict:
    trace = None
    if problem != "steiner":
        if algo == "diam2":
            raise InstanceError(f"the diameter-2 solver handles Steiner Tree, not {problem}")
        if g.n > SEARCH_CAP:
            raise SizeError(f"{g.n} vertices exceed the oracle cap of {SEARCH_CAP}")
        w = (cds_min if problem == "cds" else ds_min)(g, budget=budget)
        used = "oracle"
        verified = verify_witness(problem, g, w)
    else:
        if algo == "diam2" and g.is_connected() and diameter(g) > 2:
            raise ClassError(f"diameter {diameter(g)} exceeds 2; the diameter-2 solver does not apply")
        if not terms:
            raise InstanceError("Steiner Tree needs a nonempty terminal set")
        if algo == "auto":
            ok, model = _diam2_ready(g, model, terms)
            algo = "diam2" if ok else "oracle"
        if algo == "diam2":
            w, tr = solve(SteinerInstance(g, model, terms, budget))
            trace = tr.to_dict()
            used = "diam2"
            verified = verify_witness("steiner", g, tr.witness, terms)
        else:
            if g.n > SEARCH_CAP:
                raise SizeError(f"{g.n} vertices exceed the oracle cap of {SEARCH_CAP}")
            w = steiner_min(g, terms, budget=budget)
            used = "oracle"
            verified = verify_witness("steiner", g, w, terms)
    text = formats.emit_graph(g) + formats.emit_terms(terms, budget)
    return {
        "instance_digest": digest(text),
        "problem": problem,
        "algorithm": used,
        "status": w.status,
        "objective": w.objective,
        "witness": list(w.members),
        "budget": budget,
        "verified": bool(verified),
        "trace": trace,
    }


def _solve_text(res: dict) -> str:
    lines = [
        f"instance  {res['instance_digest']}",
        f"problem   {res['problem']}",
        f"algorithm {res['algorithm']}",
        f"status    {res['status']}",
        f"objective {res['objective']}",
        "witness   " + " ".join(map(str, res["witness"])),
        f"verified  {res['verified']}",
    ]
    tr = res["trace"]
    if tr:
        lines.append(
            "reductions twins={} simplicial={} leafy={} base={} node={}".format(
                tr["removed_twins"], tr["removed_simplicials"], tr["removed_leafy"],
                tr["base_case"], tr["chosen_node"],
            )
        )
    return "\n".join(lines) + "\n"


def cmd_solve(args) -> int:
    g, model, terms, budget = _load_instance(args)
    res = run_solve(g, model, terms, budget, args.problem, args.algo)
    if args.format == "json":
        sys.stdout.write(json.dumps(res, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_solve_text(res))
    return 0 if res["verified"] else 1


# verify


def run_verify(args) -> list[SweepResult]:
    if args.target == "gadget":
        builder = mutated_cds_from_3dm if args.inject_bug else cds_from_3dm
        return [
            cds_gadget_sweep(args.nmax or 2, args.mmax or 4, builder=builder, jobs=args.jobs),
            ds_gadget_sweep(args.graphs or 200, 8, seed=args.seed),
        ]
    if args.target == "solver":
        return [solver_sweep(args.nmax or 8, args.sample_cap, seed=args.seed, jobs=args.jobs)]
    if args.target == "lemmas":
        return [lemma_sweep(args.trials, seed=args.seed)]
    return [thickness_sweep(args.graphs or 100, args.nmax or 7, seed=args.seed)]


def sweeps_json(sweeps: list[SweepResult]) -> str:
    return json.dumps({"sweeps": [s.to_dict() for s in sweeps]}, sort_keys=True, indent=2) + "\n"


def cmd_verify(args) -> int:
    for name in ("nmax", "mmax", "graphs"):
        val = getattr(args, name)
        if val is not None and val < 1:
            raise InstanceError(f"--{name} must be positive")
    if args.trials < 0 or args.sample_cap < 1 or args.jobs < 1:
        raise InstanceError("--trials, --sample-cap and --jobs must be positive")
    sweeps = run_verify(args)
    if args.out:
        Path(args.out).write_text(sweeps_json(sweeps))
    if args.format == "json":
        sys.stdout.write(sweeps_json(sweeps))
    else:
        for s in sweeps:
            sys.stdout.write(f"[{s.kind}]\n" + s.report.to_text())
    return 0 if all(s.passed for s in sweeps) else 1


# report

REPORT_COLUMNS = {
    "cds_gadget": ["digest", "n", "m", "three_dm", "cds", "steiner", "bound", "agree"],
    "ds_gadget": ["digest", "n", "m", "ds", "steiner"],
    "thickness": ["digest", "kind", "n", "ok"],
    "solver": ["digest", "n", "m", "terminal_sets", "mismatches"],
    "lemmas": ["digest", "lemma", "pairs", "attempts", "failures"],
}
HEADERS = {"three_dm": "3dm", "terminal_sets": "terminal sets"}


def _cell(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return str(len(v))
    return str(v)


def render_table(kind: str, rows: list[dict], fmt: str) -> str:
    cols = REPORT_COLUMNS.get(kind) or (sorted(rows[0]) if rows else ["digest"])
    head = [HEADERS.get(c, c) for c in cols]
    body = [[_cell(r.get(c)) for c in cols] for r in sorted(rows, key=lambda r: r.get("digest", ""))]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(head)
        w.writerows(body)
        return buf.getvalue()
    lines = ["| " + " | ".join(head) + " |", "|" + "|".join("---" for _ in head) + "|"]
    lines += ["| " + " | ".join(r) + " |" for r in body]
    return "\n".join(lines) + "\n"


def cmd_report(args) -> int:
    chunks = []
    for src in args.source:
        path = Path(src)
        if not path.is_file():
            raise InstanceError(f"sweep file {src} not found")
        try:
            doc = json.loads(path.read_text())
            sweeps = doc["sweeps"]
        except (json.JSONDecodeError, KeyError, TypeError):
            raise InstanceError(f"{src} is not a sweep file") from None
        for s in sweeps:
            title = f"## {s['kind']}\n\n" if args.format == "markdown" and len(sweeps) > 1 else ""
            chunks.append(title + render_table(s["kind"], s.get("rows", []), args.format))
    sys.stdout.write("\n".join(chunks))
    return 0


# entry point


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="pathsteiner", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write instance files")
    g.add_argument(
        "kind",
        choices=["3dm", "graph", "upath", "gadget-cds", "gadget-steiner", "gadget-ds", "subdivision"],
    )
    g.add_argument("--n", type=int, default=2)
    g.add_argument("--m", type=int, default=3)
    g.add_argument("--p", type=float, default=0.5, help="edge probability (graph)")
    g.add_argument("--nodes", type=int, default=4, help="host tree size (upath)")
    g.add_argument("--max-diameter", type=int, default=None)
    g.add_argument("--terminals", type=int, default=None, help="terminal count (upath)")
    g.add_argument("--k", type=int, default=None, help="budget (gadget-ds)")
    g.add_argument("--from", dest="source")
    g.add_argument("--out")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    g.set_defaults(func=cmd_generate)

    s = sub.add_parser("solve", help="solve an instance")
    s.add_argument("--graph", required=True)
    s.add_argument("--terms")
    s.add_argument("--model")
    s.add_argument("--budget", type=int)
    s.add_argument("--problem", choices=["steiner", "cds", "ds"], default="steiner")
    s.add_argument("--algo", choices=["auto", "oracle", "diam2"], default="auto")
    s.add_argument("--format", choices=["json", "text"], default="text")
    s.set_defaults(func=cmd_solve)

    v = sub.add_parser("verify", help="run a verification sweep")
    v.add_argument("target", choices=["gadget", "solver", "lemmas", "thickness"])
    v.add_argument("--nmax", type=int)
    v.add_argument("--mmax", type=int)
    v.add_argument("--graphs", type=int)
    v.add_argument("--trials", type=int, default=1000)
    v.add_argument("--sample-cap", type=int, default=500)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("--out", help="write the sweep results (JSON) here")
    v.add_argument("--format", choices=["json", "text"], default="text")
    v.add_argument("--inject-bug", action="store_true", help=argparse.SUPPRESS)
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("report", help="tabulate sweep results")
    r.add_argument("--from", dest="source", action="append", required=True)
    r.add_argument("--format", choices=["markdown", "csv"], default="markdown")
    r.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
