"""Finite-horizon verdicts for limit conditions.

A condition of the form ``lim log-product = -inf`` is judged on the last
``window`` sampled values of each trace ("decay" rule); a condition of the
form ``sup log-product = +inf`` is judged on the running maximum of the trace
plus an optional exact upper bound from the weight rule ("growth" rule).
Statuses are recomputable from the stored traces and thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum


class Status(str, Enum):
    SATISFIED = "satisfied_at_horizon"
    VIOLATED = "violated_at_horizon"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class CriterionThresholds:
    satisfy_log: float = math.log(1e-6)
    violate_log: float = math.log(1e6)
    window: int = 5

    def __post_init__(self):
        if not self.satisfy_log < 0 < self.violate_log:
            raise ValueError("need satisfy_log < 0 < violate_log")
        if self.window < 1:
            raise ValueError("window must be >= 1")


def _non_increasing(xs) -> bool:
    return all(b <= a for a, b in zip(xs, xs[1:]))


def _non_decreasing(xs) -> bool:
    return all(b >= a for a, b in zip(xs, xs[1:]))


def decide_decay(traces: dict[str, list[float]], th: CriterionThresholds) -> tuple[Status, float]:
    """Status and margin for "every trace tends to -inf".

    Satisfied: every trace ends below ``satisfy_log`` and its last window is
    non-increasing.  Violated: some trace ends above ``violate_log``, or has a
    non-decreasing last window that never drops below 0 (products stuck at or
    above 1).  Fewer samples than the window is always inconclusive.
    """
    lasts = [tr[-1] for tr in traces.values() if tr]
    margin = max(x - th.satisfy_log for x in lasts) if lasts else math.nan
    if not traces or any(len(tr) < th.window for tr in traces.values()):
        return Status.INCONCLUSIVE, margin
    windows = [list(tr[-th.window :]) for tr in traces.values()]
    if all(w[-1] < th.satisfy_log and _non_increasing(w) for w in windows):
        return Status.SATISFIED, margin
    if any(w[-1] > th.violate_log or (_non_decreasing(w) and min(w) >= 0.0) for w in windows):
        return Status.VIOLATED, margin
    return Status.INCONCLUSIVE, margin


def decide_growth(running_max: list[float], bound: float | None, th: CriterionThresholds) -> tuple[Status, float]:
    """Status and margin for "sup of the log-products is +inf".

    An exact finite ``bound`` on the log-products rules the condition out.
    Otherwise the condition counts as met once the running maximum reaches
    ``violate_log``.  Margin is ``violate_log - final running max``.
    """
    margin = th.violate_log - running_max[-1] if running_max else math.nan
    if bound is not None:
        return Status.VIOLATED, margin
    if running_max and running_max[-1] >= th.violate_log:
        return Status.SATISFIED, margin
    return Status.INCONCLUSIVE, margin


@dataclass(frozen=True)
class Verdict:
    status: Status
    horizon: int
    margin: float
    traces: dict[str, tuple[float, ...]]
    powers: tuple[int, ...]
    thresholds: CriterionThresholds
    rule: str = "decay"
    bound: float | None = None
    details: dict = field(default_factory=dict)

    @property
    def satisfied(self) -> bool:
        return self.status is Status.SATISFIED

    def recompute(self) -> tuple[Status, float]:
        if self.rule == "decay":
            return decide_decay({k: list(v) for k, v in self.traces.items()}, self.thresholds)
        return decide_growth(list(self.traces["running_max"]), self.bound, self.thresholds)


def decay_verdict(traces: dict[str, list[float]], powers, th: CriterionThresholds, **details) -> Verdict:
    status, margin = decide_decay(traces, th)
    return Verdict(
        status=status,
        horizon=len(powers),
        margin=margin,
        traces={k: tuple(v) for k, v in traces.items()},
        powers=tuple(powers),
        thresholds=th,
        rule="decay",
        details=details,
    )


def growth_verdict(traces: dict[str, list[float]], bound: float | None, th: CriterionThresholds, **details) -> Verdict:
    running = traces["running_max"]
    status, margin = decide_growth(running, bound, th)
    return Verdict(
        status=status,
        horizon=len(running),
        margin=margin,
        traces={k: tuple(v) for k, v in traces.items()},
        powers=tuple(range(1, len(running) + 1)),
        thresholds=th,
        rule="growth",
        bound=bound,
        details=details,
    )
