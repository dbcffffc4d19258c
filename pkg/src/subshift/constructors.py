"""Named weight families and self-verifying example bundles."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from subshift.core.index_set import IndexSet
from subshift.core.operators import Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.verdict import CriterionThresholds, Status, Verdict
from subshift.core.weights import BlockInterleaved, Constant, Domain, Periodic, Rule, Step, WeightSequence
from subshift.criteria import DEFAULT_THRESHOLDS, backward_condition, eq65_forward
from subshift.errors import AdmissibilityError, ConstructionError
from subshift.invariance import check_schedule
from subshift.shifts import adjoint

FAMILIES = ("constant", "step", "periodic", "block_interleaved")


def make_family(name: str, params: dict, domain: Domain = Domain.BILATERAL) -> WeightSequence:
    """Build a weight sequence from a family name and its parameters.

    ``constant``: ``value`` (or ``lam``); ``step``: ``pos``, ``neg``;
    ``periodic``: ``values``; ``block_interleaved``: ``low``, ``high``,
    ``lengths``.  Non-positive parameters raise ``ValueError``.
    """
    params = dict(params)
    if name == "constant":
        rule: Rule = Constant(params.pop("value", params.pop("lam", None)))
    elif name == "step":
        rule = Step(params.pop("pos"), params.pop("neg"))
    elif name == "periodic":
        rule = Periodic(tuple(params.pop("values")))
    elif name == "block_interleaved":
        rule = BlockInterleaved(params.pop("low"), params.pop("high"), tuple(params.pop("lengths")))
    else:
        raise ValueError(f"unknown family {name!r}; expected one of {FAMILIES}")
    if params:
        raise ValueError(f"unexpected parameters for {name}: {sorted(params)}")
    return WeightSequence(rule, domain)


@dataclass(frozen=True)
class HerreroBundle:
    """A shift T with a forward witness on M1 and an adjoint witness on M2."""

    op: OperatorSpec
    M1: IndexSet
    M2: IndexSet
    witness_fwd: int
    witness_bwd: int
    sched_fwd: PowerSchedule
    sched_bwd: PowerSchedule
    verdict_fwd: Verdict
    verdict_bwd: Verdict

    @property
    def weights(self) -> WeightSequence:
        return self.op.weights

    @property
    def adjoint_op(self) -> OperatorSpec:
        return adjoint(self.op)


def _block_end_powers(layout, count: int, parity: int, p: int) -> list[int]:
    """Ends of the first ``count`` blocks of the given parity (0 = low, 1 = high),
    rounded down to multiples of p, or pushed to the next unused multiple when
    rounding would not advance the schedule (blocks shorter than p)."""
    ends = layout.block_ends(2 * count + parity)
    chosen: list[int] = []
    for k in range(parity, 2 * count, 2):
        n = (ends[k] // p) * p
        floor = chosen[-1] if chosen else 0
        chosen.append(n if n > floor else floor + p)
    return chosen


def _threads() -> int:
    return max(1, int(os.environ.get("SUBSHIFT_THREADS", "2")))


def herrero_construction(
    low: float,
    high: float,
    lengths,
    p: int,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> HerreroBundle:
    """A bilateral forward shift whose forward condition holds on one subspace
    and whose adjoint satisfies the backward condition on another.

    Layout: ``BlockInterleaved(low, high, lengths)``, so partial log-products
    of the weights on N swing down through low blocks and up through high
    blocks with widening amplitude.  ``M1`` is the residue class 0 mod p with
    witness 0, sampled at ends of low blocks; ``M2`` is the class 1 mod p with
    witness 1 for the adjoint, sampled at ends of high blocks.  The horizon is
    ``len(lengths)`` for both schedules.

    Both conditions are evaluated before returning; anything short of two
    satisfied verdicts raises :class:`ConstructionError` carrying them.
    """
    lengths = tuple(int(x) for x in lengths)
    if not low < 1 < high:
        raise ValueError("need low < 1 < high")
    if p < 2:
        raise ValueError("need p >= 2")
    rule = BlockInterleaved(low, high, lengths)
    op = OperatorSpec.make(Kind.BILATERAL_FORWARD, rule)
    M1 = op.index_set(p, {0})
    M2 = op.index_set(p, {1})
    K = len(lengths)
    try:
        sched_fwd = PowerSchedule.explicit(_block_end_powers(rule.layout, K, 0, p))
        sched_bwd = PowerSchedule.explicit(_block_end_powers(rule.layout, K, 1, p))
        check_schedule(op, M1, sched_fwd.powers)
        check_schedule(adjoint(op), M2, sched_bwd.powers)
    except AdmissibilityError as exc:
        raise ConstructionError(f"schedules not admissible: {exc}") from exc

    with ThreadPoolExecutor(max_workers=_threads()) as pool:
        fwd = pool.submit(eq65_forward, op, M1, 0, sched_fwd, th)
        bwd = pool.submit(backward_condition, adjoint(op), M2, 1, sched_bwd, th)
        verdict_fwd, verdict_bwd = fwd.result(), bwd.result()

    bundle = HerreroBundle(op, M1, M2, 0, 1, sched_fwd, sched_bwd, verdict_fwd, verdict_bwd)
    if not (verdict_fwd.status is Status.SATISFIED and verdict_bwd.status is Status.SATISFIED):
        raise ConstructionError(
            "self-verification failed: "
            f"forward {verdict_fwd.status.value}, backward {verdict_bwd.status.value}",
            {"bundle": bundle},
        )
    return bundle


@dataclass(frozen=True)
class Example2B:
    op: OperatorSpec
    M: IndexSet


def rolewicz_example() -> Example2B:
    """Twice the unilateral backward shift with M = {x : x_{2n} = 0}, the odd-indexed span."""
    op = OperatorSpec.make(Kind.UNILATERAL_BACKWARD, Constant(2.0))
    return Example2B(op, op.index_set(2, {1}))
