#!/usr/bin/env python3
"""Wall-clock time of the diameter-2 solver against the exhaustive oracle.

Draws seeded random undirected path graphs of diameter at most 2 and, for each
size, reports median solve times and whether the two objectives agreed.  The
oracle is skipped above ``--oracle-max`` vertices.
"""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass

from pathsteiner.diam2 import SteinerInstance, solve
from pathsteiner.generate import random_upath_graph, rng_for
from pathsteiner.graph import simplicial_vertices
from pathsteiner.oracle import steiner_min


@dataclass
class ScalingConfig:
    sizes: tuple[int, ...] = (8, 12, 16, 24, 32, 48, 64)
    per_size: int = 10
    oracle_max: int = 40
    seed: int = 0


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def run(cfg: ScalingConfig) -> bool:
    print("| n | instances | diam2 median ms | oracle median ms | agree |")
    print("|---|---|---|---|---|")
    all_ok = True
    for n in cfg.sizes:
        rng = rng_for(cfg.seed, "scaling", n)
        t_fast, t_slow, agree, done = [], [], 0, 0
        for _ in range(cfg.per_size):
            got = random_upath_graph(rng, n, max(2, n // 3), max_diameter=2)
            if got is None:
                continue
            g, model = got
            # terminals among the simplicial vertices keep the reductions busy
            pool = simplicial_vertices(g) or list(g.vertices)
            x = sorted(rng.sample(pool, max(1, min(len(pool), rng.randint(2, 6)))))
            (w, _), dt = timed(lambda: solve(SteinerInstance(g, model, x)))
            t_fast.append(dt)
            done += 1
            if n <= cfg.oracle_max:
                o, dt = timed(lambda: steiner_min(g, x))
                t_slow.append(dt)
                agree += o.objective == w.objective
        slow = f"{1000 * statistics.median(t_slow):.2f}" if t_slow else "-"
        ok = not t_slow or agree == len(t_slow)
        all_ok &= ok
        print(f"| {n} | {done} | {1000 * statistics.median(t_fast):.2f} | {slow} | {f'{agree}/{len(t_slow)}' if t_slow else '-'} |")
    return all_ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    p.add_argument("--sizes", type=int, nargs="+", default=list(ScalingConfig.sizes))
    p.add_argument("--per-size", type=int, default=ScalingConfig.per_size)
    p.add_argument("--oracle-max", type=int, default=ScalingConfig.oracle_max)
    p.add_argument("--seed", type=int, default=ScalingConfig.seed)
    a = p.parse_args()
    cfg = ScalingConfig(tuple(a.sizes), a.per_size, a.oracle_max, a.seed)
    return 0 if run(cfg) else 1


if __name__ == "__main__":
    raise SystemExit(main())
