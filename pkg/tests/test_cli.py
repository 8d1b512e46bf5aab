from __future__ import annotations

import json
import shutil
from pathlib import Path

import jsonschema
import pytest

from pathsteiner import formats
from pathsteiner.cli import SOLVE_SCHEMA, main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv) -> tuple[int, str, str]:
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def k13(tmp_path):
    for name in ("k13.graph", "k13.model", "k13.terms"):
        shutil.copy(GOLDEN / name, tmp_path / name)
    return tmp_path / "k13"


def test_generate_3dm_is_deterministic(tmp_path, capsys):
    a, b = tmp_path / "a.3dm", tmp_path / "b.3dm"
    assert run(capsys, "generate", "3dm", "--n", 2, "--m", 3, "--seed", 7, "--out", a)[0] == 0
    assert run(capsys, "generate", "3dm", "--n", 2, "--m", 3, "--seed", 7, "--out", b)[0] == 0
    assert a.read_bytes() == b.read_bytes() == (GOLDEN / "seed7.3dm").read_bytes()
    code, out, _ = run(capsys, "generate", "3dm", "--n", 2, "--m", 3, "--seed", 8)
    assert code == 0 and out != a.read_text()


@pytest.mark.parametrize("n,m", [(1, 1), (2, 3), (2, 5), (3, 4)])
def test_gadget_vertex_count(tmp_path, capsys, n, m):
    src = tmp_path / "inst.3dm"
    run(capsys, "generate", "3dm", "--n", n, "--m", m, "--seed", 1, "--out", src)
    code, out, _ = run(capsys, "generate", "gadget-cds", "--from", src, "--out", tmp_path / "gad")
    assert code == 0
    g = formats.parse_graph((tmp_path / "gad.graph").read_text())
    assert g.n == 8 * m + 3 * n
    model = formats.parse_model((tmp_path / "gad.model").read_text())
    assert model.n_nodes == 1 + 4 * m + 3 * n
    assert formats.parse_terms((tmp_path / "gad.terms").read_text()) == ((), 2 * m + n)
    labels = (tmp_path / "gad.labels").read_text().splitlines()
    assert labels[0] == "0 a_0" and len(labels) == g.n


def test_gadget_steiner_terms_are_simplicial(tmp_path, capsys):
    run(capsys, "generate", "gadget-steiner", "--from", GOLDEN / "one.3dm", "--out", tmp_path / "s")
    g = formats.parse_graph((tmp_path / "s.graph").read_text())
    terms, budget = formats.parse_terms((tmp_path / "s.terms").read_text())
    assert budget == 3
    assert list(terms) == [v for v in g.vertices if g.is_clique(g.adj[v])]


def test_subdivision_counts(tmp_path, capsys):
    src = GOLDEN / "seed3.graph"
    g = formats.parse_graph(src.read_text())
    assert run(capsys, "generate", "subdivision", "--from", src, "--out", tmp_path / "sub")[0] == 0
    s = formats.parse_graph((tmp_path / "sub.graph").read_text())
    assert (s.n, s.m) == (g.n + g.m, 2 * g.m)
    h1 = formats.parse_graph((tmp_path / "sub.h1.graph").read_text())
    h2 = formats.parse_graph((tmp_path / "sub.h2.graph").read_text())
    assert h1.edges | h2.edges == s.edges and not h1.edges & h2.edges


def test_gadget_ds(tmp_path, capsys):
    code, _, _ = run(capsys, "generate", "gadget-ds", "--from", GOLDEN / "seed3.graph", "--k", 2, "--out", tmp_path / "d")
    assert code == 0
    g = formats.parse_graph((tmp_path / "d.graph").read_text())
    assert g.n == 2 * 6 + 1
    assert formats.parse_terms((tmp_path / "d.terms").read_text())[1] == 2


def test_upath_generation(tmp_path, capsys):
    prefix = tmp_path / "u"
    assert run(capsys, "generate", "upath", "--n", 7, "--nodes", 4, "--max-diameter", 2, "--seed", 5, "--out", prefix)[0] == 0
    for ext in ("graph", "model", "terms"):
        assert (tmp_path / f"u.{ext}").read_text() == (GOLDEN / f"upath5.{ext}").read_text()


@pytest.mark.parametrize(
    "argv",
    [
        ["generate", "3dm", "--n", "0"],
        ["generate", "graph", "--p", "1.5"],
        ["generate", "upath"],
        ["generate", "gadget-cds", "--out", "x"],
        ["generate", "gadget-ds", "--from", str(GOLDEN / "k13.graph"), "--out", "x"],
        ["generate", "gadget-cds", "--from", "/nonexistent/file.3dm", "--out", "x"],
    ],
)
def test_generate_parameter_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and err.startswith("error:")


def test_solve_k13_auto_uses_diam2(k13, capsys):
    code, out, _ = run(
        capsys, "solve", "--graph", f"{k13}.graph", "--terms", f"{k13}.terms", "--format", "json"
    )
    res = json.loads(out)
    assert code == 0
    assert res["algorithm"] == "diam2" and res["objective"] == 1 and res["witness"] == [0]
    assert res["verified"] is True
    jsonschema.validate(res, SOLVE_SCHEMA)


def test_solve_with_model_and_budget(k13, capsys):
    code, out, _ = run(
        capsys, "solve", "--graph", f"{k13}.graph", "--model", f"{k13}.model",
        "--terms", f"{k13}.terms", "--algo", "diam2", "--budget", 0,
    )
    assert code == 0
    assert "status    no" in out and "objective 1" in out and "algorithm diam2" in out


def test_solve_oracle_and_other_problems(k13, capsys):
    for problem, expected in (("steiner", 1), ("cds", 1), ("ds", 1)):
        code, out, _ = run(
            capsys, "solve", "--graph", f"{k13}.graph", "--terms", f"{k13}.terms",
            "--algo", "oracle", "--problem", problem, "--format", "json",
        )
        res = json.loads(out)
        jsonschema.validate(res, SOLVE_SCHEMA)
        assert code == 0 and res["objective"] == expected and res["algorithm"] == "oracle"


def test_solve_gadget_with_diam2_is_class_error(tmp_path, capsys):
    run(capsys, "generate", "gadget-steiner", "--from", GOLDEN / "one.3dm", "--out", tmp_path / "s")
    code, _, err = run(
        capsys, "solve", "--graph", tmp_path / "s.graph", "--model", tmp_path / "s.model",
        "--terms", tmp_path / "s.terms", "--algo", "diam2",
    )
    assert code == 3 and "diameter 3" in err
    # auto falls back to the oracle on the same file
    code, out, _ = run(capsys, "solve", "--graph", tmp_path / "s.graph", "--terms", tmp_path / "s.terms", "--format", "json")
    res = json.loads(out)
    assert code == 0 and res["algorithm"] == "oracle" and res["objective"] == 3


def test_solve_size_error(tmp_path, capsys):
    n = 60
    path = tmp_path / "big.graph"
    path.write_text(formats.emit_graph(formats.parse_graph(
        f"p graph {n} {n - 1}\n" + "".join(f"e {i} {i + 1}\n" for i in range(n - 1))
    )))
    (tmp_path / "big.terms").write_text("x 0 59\n")
    code, _, err = run(capsys, "solve", "--graph", path, "--terms", tmp_path / "big.terms")
    assert code == 3 and "cap" in err


@pytest.mark.parametrize(
    "graph,terms,fragment",
    [
        ("p graph 2 1\ne 0 1\n", "x 0 5\n", "outside"),
        ("p graph 2 1\ne 0 3\n", "x 0\n", "line 2"),
        ("p graph 2 1\ne 0 1\n", "x\n", "nonempty"),
    ],
)
def test_solve_instance_errors(tmp_path, capsys, graph, terms, fragment):
    (tmp_path / "g.graph").write_text(graph)
    (tmp_path / "g.terms").write_text(terms)
    code, _, err = run(capsys, "solve", "--graph", tmp_path / "g.graph", "--terms", tmp_path / "g.terms")
    assert code == 2 and fragment in err


def test_solve_diam2_without_model_or_with_wrong_size(k13, tmp_path, capsys):
    code, _, err = run(capsys, "solve", "--graph", f"{k13}.graph", "--terms", f"{k13}.terms", "--algo", "diam2")
    assert code == 2
    (tmp_path / "small.model").write_text("p model 1 1\nv 0 0\n")
    code, _, err = run(capsys, "solve", "--graph", f"{k13}.graph", "--model", tmp_path / "small.model", "--terms", f"{k13}.terms")
    assert code == 2 and "model has 1 vertices" in err


def test_verify_gadget_small_passes(tmp_path, capsys):
    out_file = tmp_path / "sweep.json"
    code, out, _ = run(capsys, "verify", "gadget", "--nmax", 1, "--mmax", 1, "--graphs", 5, "--out", out_file)
    assert code == 0 and "overall: FAIL" not in out
    doc = json.loads(out_file.read_text())
    assert [s["kind"] for s in doc["sweeps"]] == ["cds_gadget", "ds_gadget"]


def test_verify_injected_bug_fails_with_digest(capsys):
    code, out, _ = run(capsys, "verify", "gadget", "--nmax", 1, "--mmax", 1, "--graphs", 2, "--inject-bug", "--format", "json")
    assert code == 1
    doc = json.loads(out)
    cg = doc["sweeps"][0]
    bad = [r["digest"] for r in cg["rows"] if r["structure_failures"]]
    assert bad
    failing = [c for c in cg["report"]["checks"] if not c["passed"]]
    assert failing and bad[0] in failing[0]["detail"]


def test_verify_lemmas_and_thickness_small(capsys):
    assert run(capsys, "verify", "lemmas", "--trials", 5)[0] == 0
    assert run(capsys, "verify", "thickness", "--graphs", 5, "--nmax", 5)[0] == 0
    assert run(capsys, "verify", "solver", "--nmax", 4)[0] == 0


@pytest.mark.parametrize("argv", [["--nmax", "0"], ["--jobs", "0"], ["--trials", "-1"]])
def test_verify_parameter_errors(capsys, argv):
    assert run(capsys, "verify", "lemmas", *argv)[0] == 2


def test_report_rows(tmp_path, capsys):
    sweep = tmp_path / "cds.json"
    run(capsys, "verify", "gadget", "--nmax", 1, "--mmax", 1, "--graphs", 1, "--out", sweep)
    code, out, _ = run(capsys, "report", "--from", sweep)
    assert code == 0
    lines = out.splitlines()
    header = next(l for l in lines if l.startswith("| digest"))
    assert header == "| digest | n | m | 3dm | cds | steiner | bound | agree |"
    row = next(l for l in lines if l.startswith("| ") and "| 1 | 1 |" in l)
    cells = [c.strip() for c in row.strip("|").split("|")]
    assert cells[1:] == ["1", "1", "yes", "3", "3", "3", "yes"]


def test_report_no_instance_exceeds_bound(tmp_path, capsys):
    sweep = tmp_path / "cds.json"
    run(capsys, "verify", "gadget", "--nmax", 2, "--mmax", 4, "--graphs", 1, "--out", sweep)
    code, out, _ = run(capsys, "report", "--from", sweep, "--format", "csv")
    rows = [l.split(",") for l in out.splitlines()]
    cg = [r for r in rows if len(r) == 8 and r[0] != "digest"]
    no_rows = [r for r in cg if r[3] == "no" and r[4] != "-"]
    assert no_rows
    assert all(int(r[4]) > int(r[6]) and int(r[5]) > int(r[6]) and r[7] == "yes" for r in no_rows)


def test_report_empty_sweep_is_header_only(tmp_path, capsys):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"sweeps": [{"kind": "cds_gadget", "rows": []}]}))
    code, out, _ = run(capsys, "report", "--from", path)
    assert code == 0
    assert out == "| digest | n | m | 3dm | cds | steiner | bound | agree |\n|---|---|---|---|---|---|---|---|\n"
    code, out, _ = run(capsys, "report", "--from", path, "--format", "csv")
    assert out == "digest,n,m,3dm,cds,steiner,bound,agree\n"


def test_report_missing_or_bad_file(tmp_path, capsys):
    code, _, err = run(capsys, "report", "--from", tmp_path / "missing.json")
    assert code == 2 and "not found" in err
    (tmp_path / "bad.json").write_text("{}")
    assert run(capsys, "report", "--from", tmp_path / "bad.json")[0] == 2


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run([sys.executable, "-m", "pathsteiner", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "generate" in proc.stdout
