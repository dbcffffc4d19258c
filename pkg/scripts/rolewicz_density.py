#!/usr/bin/env python3
"""Criterion vectors for lambda*B on the odd-indexed span: hit rate versus
lambda, eps and window size.

For lambda > 1 the growth condition holds and every grid target should be hit;
lambda <= 1 is refused up front.
"""

from __future__ import annotations

import argparse
import csv
import math
import sys
from dataclasses import dataclass, field

from subshift.core import Constant, Kind, OperatorSpec, PowerSchedule
from subshift.errors import ConditionRefused, HorizonError
from subshift.orbits import TruncationWindow, build_criterion_vector, default_grid, density_experiment


@dataclass
class DensityConfig:
    lambdas: list[float] = field(default_factory=lambda: [0.9, 1.0, 1.5, 2.0, 3.0])
    eps_values: list[float] = field(default_factory=lambda: [1e-1, 1e-2, 1e-3])
    windows: list[int] = field(default_factory=lambda: [32, 64, 128])
    grid_members: int = 3
    n_iter: int = 2000


def one_run(lam: float, eps: float, size: int, cfg: DensityConfig) -> dict:
    op = OperatorSpec.make(Kind.UNILATERAL_BACKWARD, Constant(lam))
    M = op.index_set(2, {1})
    win = TruncationWindow.of_size(size, op.kind)
    grid = default_grid(M, win, cfg.grid_members)
    top = max(max(y.support) for y in grid)
    sched = PowerSchedule.arithmetic(2, max(1, (win.hi - top) // 2))
    row = {"lambda": lam, "eps": eps, "window": size, "targets": len(grid)}
    try:
        cv = build_criterion_vector(op, M, grid, eps, sched, 1)
    except ConditionRefused as exc:
        status = exc.verdict.status.value if exc.verdict else "refused"
        return {**row, "status": f"refused ({status})", "hit_rate": 0.0}
    except HorizonError:
        return {**row, "status": "window too small for placements", "hit_rate": math.nan}
    rep = density_experiment(op, M, cv.x, grid, eps, cfg.n_iter, win, stop_when_all_hit=True)
    return {
        **row,
        "status": "ran",
        "hit_rate": rep.hit_rate,
        "last_placement": cv.placements[-1],
        "tail_bound": cv.tail_bound,
        "leaked_norm": rep.leaked_norm_max,
    }


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="-", help="CSV path, '-' for stdout")
    ap.add_argument("--n-iter", type=int, default=2000)
    ap.add_argument("--grid-members", type=int, default=3)
    args = ap.parse_args(argv)
    cfg = DensityConfig(grid_members=args.grid_members, n_iter=args.n_iter)
    rows = [one_run(lam, eps, size, cfg) for lam in cfg.lambdas for eps in cfg.eps_values for size in cfg.windows]
    fields = ["lambda", "eps", "window", "targets", "status", "hit_rate", "last_placement", "tail_bound", "leaked_norm"]
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="")
    try:
        w = csv.DictWriter(out, fieldnames=fields, restval="")
        w.writeheader()
        w.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
