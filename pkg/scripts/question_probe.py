#!/usr/bin/env python3
"""For random step/table weights and residue-class pairs (M1, M2), record how
often the forward condition on M1 and the adjoint condition on M2 hold
together, next to the set relation between M2 and the complement of M1.

Evidence only: a finite horizon cannot settle a limit statement.
"""

from __future__ import annotations

import argparse
import collections
import json
import random
import sys
from dataclasses import asdict, dataclass

from subshift.core import IndexSet, Kind, OperatorSpec, PowerSchedule, Status, Step, Table
from subshift.orbits import perp_question_probe


@dataclass
class ProbeConfig:
    trials: int = 200
    max_modulus: int = 6
    horizon: int = 24
    seed: int = 0


def random_case(rng: random.Random, cfg: ProbeConfig):
    base = Step(rng.uniform(0.3, 3.0), rng.uniform(0.3, 3.0))
    rule = base if rng.random() < 0.5 else Table(tuple((k, rng.uniform(0.3, 3.0)) for k in rng.sample(range(-6, 7), 3)), base)
    op = OperatorSpec.make(Kind.BILATERAL_FORWARD, rule)
    p = rng.randint(1, cfg.max_modulus)
    r1 = frozenset(r for r in range(p) if rng.random() < 0.5) or frozenset({0})
    r2 = frozenset(r for r in range(p) if rng.random() < 0.5) or frozenset({p - 1})
    return op, IndexSet(p, r1), IndexSet(p, r2), PowerSchedule.arithmetic(p, cfg.horizon)


def status(v) -> str:
    return v.status.value if hasattr(v, "status") else "error"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=200)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--horizon", type=int, default=24)
    args = ap.parse_args(argv)
    cfg = ProbeConfig(trials=args.trials, seed=args.seed, horizon=args.horizon)
    rng = random.Random(cfg.seed)
    table = collections.Counter()
    for _ in range(cfg.trials):
        op, M1, M2, sched = random_case(rng, cfg)
        rep = perp_question_probe(op, M1, M2, sched)
        both = all(status(rep.verdicts[k]) == Status.SATISFIED.value for k in ("forward_M1", "adjoint_M2"))
        perp_too = status(rep.verdicts["adjoint_perp_M1"]) == Status.SATISFIED.value
        table[(rep.relation, both, perp_too)] += 1
    rows = [
        {"relation": rel, "forward_and_adjoint": both, "adjoint_on_perp": perp_too, "count": n}
        for (rel, both, perp_too), n in sorted(table.items(), key=lambda kv: -kv[1])
    ]
    print(json.dumps({"config": asdict(cfg), "rows": rows}, indent=2))
    return 0


if __name__ == "__main__":
    sys.exit(main())
