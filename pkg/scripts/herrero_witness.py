#!/usr/bin/env python3
"""Sweep block layouts for a weight sequence whose forward condition holds on
one residue class and whose adjoint's backward condition holds on another.

Writes one JSON line per (lengths, p) with both verdict statuses and margins.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field

from subshift.constructors import herrero_construction
from subshift.errors import ConstructionError
from subshift.orbits import perp_question_probe


@dataclass
class SweepConfig:
    low: float = 0.5
    high: float = 2.0
    periods: list[int] = field(default_factory=lambda: [2, 3, 4])
    max_blocks: int = 6
    base: int = 2


def layouts(cfg: SweepConfig):
    for k in range(1, cfg.max_blocks + 1):
        yield [cfg.base ** (i + 1) for i in range(k)]


def run(cfg: SweepConfig):
    for p in cfg.periods:
        for lengths in layouts(cfg):
            t0 = time.perf_counter()
            try:
                b = herrero_construction(cfg.low, cfg.high, lengths, p)
                ok = True
            except ConstructionError as exc:
                b, ok = exc.diagnostics.get("bundle"), False
            row = {"p": p, "lengths": lengths, "constructed": ok, "seconds": round(time.perf_counter() - t0, 4)}
            if b is not None:
                row.update(
                    forward=b.verdict_fwd.status.value,
                    forward_margin=b.verdict_fwd.margin,
                    backward=b.verdict_bwd.status.value,
                    backward_margin=b.verdict_bwd.margin,
                    sched_fwd=list(b.sched_fwd.powers),
                    sched_bwd=list(b.sched_bwd.powers),
                )
                probe = perp_question_probe(b.op, b.M1, b.M2, b.sched_fwd, m1=0, m2=1, sched_adjoint=b.sched_bwd)
                row["M2_vs_perp_M1"] = probe.relation
            yield row


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--low", type=float, default=0.5)
    ap.add_argument("--high", type=float, default=2.0)
    ap.add_argument("--periods", type=int, nargs="+", default=[2, 3, 4])
    ap.add_argument("--max-blocks", type=int, default=6)
    ap.add_argument("--base", type=int, default=2, help="block lengths are base, base^2, ...")
    args = ap.parse_args(argv)
    cfg = SweepConfig(args.low, args.high, args.periods, args.max_blocks, args.base)
    print(json.dumps({"config": asdict(cfg)}))
    for row in run(cfg):
        print(json.dumps(row))
    return 0


if __name__ == "__main__":
    sys.exit(main())
