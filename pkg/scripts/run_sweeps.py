#!/usr/bin/env python3
"""Run every verification sweep at full size and write one JSON file per sweep.

    python3 scripts/run_sweeps.py --out results/ --jobs 4

Afterwards ``pathsteiner report --from results/cds_gadget.json`` tabulates a sweep.
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from pathsteiner.verify import cds_gadget_sweep, ds_gadget_sweep, lemma_sweep, solver_sweep, thickness_sweep


@dataclass
class SweepConfig:
    seed: int = 0
    jobs: int = 1
    gadget_nmax: int = 2
    gadget_mmax: int = 4
    ds_graphs: int = 200
    split_graphs: int = 100
    iso_pairs: int = 50
    solver_nmax: int = 8
    sample_cap: int = 500
    lemma_trials: int = 1000


def run(cfg: SweepConfig, out: Path) -> bool:
    out.mkdir(parents=True, exist_ok=True)
    plan = {
        "cds_gadget": lambda: cds_gadget_sweep(cfg.gadget_nmax, cfg.gadget_mmax, jobs=cfg.jobs),
        "ds_gadget": lambda: ds_gadget_sweep(cfg.ds_graphs, 8, seed=cfg.seed),
        "thickness": lambda: thickness_sweep(cfg.split_graphs, 7, pairs=cfg.iso_pairs, seed=cfg.seed),
        "solver": lambda: solver_sweep(cfg.solver_nmax, cfg.sample_cap, seed=cfg.seed, jobs=cfg.jobs),
        "lemmas": lambda: lemma_sweep(cfg.lemma_trials, seed=cfg.seed),
    }
    ok = True
    for name, fn in plan.items():
        t0 = time.perf_counter()
        res = fn()
        secs = time.perf_counter() - t0
        (out / f"{name}.json").write_text(json.dumps({"sweeps": [res.to_dict()]}, sort_keys=True, indent=2) + "\n")
        print(f"{'PASS' if res.passed else 'FAIL'}  {name:<10} {len(res.rows):>6} rows  {secs:6.1f} s")
        ok &= res.passed
    (out / "config.json").write_text(json.dumps(asdict(cfg), sort_keys=True, indent=2) + "\n")
    return ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--out", type=Path, default=Path("results"))
    for name, field in SweepConfig.__dataclass_fields__.items():
        p.add_argument("--" + name.replace("_", "-"), type=int, default=field.default)
    args = vars(p.parse_args())
    out = args.pop("out")
    return 0 if run(SweepConfig(**args), out) else 1


if __name__ == "__main__":
    raise SystemExit(main())
