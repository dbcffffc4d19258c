"""Weight-product conditions for subspace-transitivity of weighted shifts.

Every condition is sampled along a power schedule and returned as a
:class:`~subshift.core.verdict.Verdict`.  Trace values are natural logs of the
weight products, so "product -> 0" reads "trace -> -inf".

Index conventions for a witness ``m`` and power ``n``:

* bilateral forward, ``plus``:  sum ln w_j over j in [m, m+n)
* bilateral forward, ``minus``: -sum ln w_j over j in [m-n, m)
* bilateral backward, ``plus``:  sum ln w_{-j} over j in [m, m+n)
* bilateral backward, ``minus``: -sum ln w_j over j in [1-m, n-m]
* unilateral backward: partial sums sum ln w_{m+j} over j in [1, n]
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from subshift.core.index_set import IndexSet
from subshift.core.operators import DirectSumSpec, Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.verdict import CriterionThresholds, Verdict, decay_verdict, growth_verdict
from subshift.core.weights import WeightSequence
from subshift.errors import AdmissibilityError, DegenerateSubspaceError, KindError
from subshift.invariance import admissible_powers, check_schedule, is_power_invariant
from subshift.shifts import power_product

DEFAULT_THRESHOLDS = CriterionThresholds()


def _require_kind(op: OperatorSpec, *kinds: Kind) -> None:
    if op.kind not in kinds:
        if op.kind is Kind.UNILATERAL_FORWARD:
            raise KindError("unilateral forward weighted shifts can not be subspace-hypercyclic for any subspace")
        raise KindError(f"expected {' or '.join(k.value for k in kinds)}, got {op.kind.value}")


def _require_member(F: IndexSet, m: int, name: str = "witness") -> None:
    if F.degenerate:
        raise DegenerateSubspaceError("index set spans a zero or finite-dimensional subspace")
    if not F.contains(m):
        raise AdmissibilityError(f"{name} {m} is not in the index set")


def _invertibility(w: WeightSequence, lo: int, hi: int) -> dict:
    inf, sup = w.bounds(lo, hi)
    return {"window": [lo, hi], "inf": inf, "sup": sup, "bounded": inf > 0 and math.isfinite(sup)}


def forward_traces(w: WeightSequence, m: int, powers) -> tuple[list[float], list[float]]:
    plus = [w.log_sum(m, m + n) for n in powers]
    minus = [-w.log_sum(m - n, m) for n in powers]
    return plus, minus


def backward_traces(w: WeightSequence, m: int, powers) -> tuple[list[float], list[float]]:
    plus = [w.log_sum(-m - n + 1, -m + 1) for n in powers]
    minus = [-w.log_sum(1 - m, n - m + 1) for n in powers]
    return plus, minus


def eq65_forward(
    op: OperatorSpec,
    F: IndexSet,
    m_i: int,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Forward decay of ``e_{m_i}`` and backward decay of its right-inverse orbit.

    The operator must be a bilateral forward shift and every scheduled power
    must leave the subspace invariant.  Traces are ``plus`` and ``minus``.
    """
    _require_kind(op, Kind.BILATERAL_FORWARD)
    _require_member(F, m_i)
    check_schedule(op, F, sched.powers)
    plus, minus = forward_traces(op.weights, m_i, sched.powers)
    n_max = sched.last
    return decay_verdict(
        {"plus": plus, "minus": minus},
        sched.powers,
        th,
        condition="eq65",
        witness=m_i,
        invertibility=_invertibility(op.weights, m_i - n_max, m_i + n_max),
    )


def backward_condition(
    op: OperatorSpec,
    F: IndexSet,
    m_i: int,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """The bilateral backward counterpart of :func:`eq65_forward`."""
    _require_kind(op, Kind.BILATERAL_BACKWARD)
    _require_member(F, m_i)
    check_schedule(op, F, sched.powers)
    plus, minus = backward_traces(op.weights, m_i, sched.powers)
    n_max = sched.last
    return decay_verdict(
        {"plus": plus, "minus": minus},
        sched.powers,
        th,
        condition="bac",
        witness=m_i,
        invertibility=_invertibility(op.weights, -m_i - n_max, n_max - m_i + 1),
    )


@dataclass(frozen=True)
class FiniteCheckRow:
    index: int
    log_plus: float
    log_minus: float
    margin_plus: float
    margin_minus: float
    passed: bool


@dataclass(frozen=True)
class FiniteCheckReport:
    delta: float
    q: int
    n: int
    rows: tuple[FiniteCheckRow, ...]
    vacuous: bool

    @property
    def passed(self) -> bool:
        return not self.vacuous and all(r.passed for r in self.rows)


def thm19_finite_check(op: OperatorSpec, F: IndexSet, delta: float, q: int, n: int) -> FiniteCheckReport:
    """Both weight products below ``delta`` for every m_j in F with |m_j| <= q, at power n."""
    _require_kind(op, Kind.BILATERAL_FORWARD)
    if not delta > 0:
        raise ValueError("delta must be positive")
    if q < 0:
        raise ValueError("q must be >= 0")
    if not is_power_invariant(op, F, n):
        raise AdmissibilityError(f"power {n} does not leave the subspace invariant")
    log_delta = math.log(delta)
    rows = []
    for m in F.enumerate(-q, q):
        plus, minus = forward_traces(op.weights, m, [n])
        rows.append(
            FiniteCheckRow(
                index=m,
                log_plus=plus[0],
                log_minus=minus[0],
                margin_plus=plus[0] - log_delta,
                margin_minus=minus[0] - log_delta,
                passed=plus[0] < log_delta and minus[0] < log_delta,
            )
        )
    return FiniteCheckReport(delta, q, n, tuple(rows), vacuous=not rows)


@dataclass(frozen=True)
class BoundedBelowApplicability:
    applicable: bool
    b: float
    witness: int | None
    probe_window: int
    note: str = ""


def thm84_applicability(op: OperatorSpec, F: IndexSet, probe_window: int) -> BoundedBelowApplicability:
    """Lower bound of the negative-index weights and a witness m_i >= 0 in F.

    The bound is exact over [-probe_window, -1] (computed from the rule
    structure where available); the witness is searched in [0, probe_window].
    """
    if not op.kind.bilateral:
        raise KindError("the bounded-below variant concerns bilateral shifts")
    if probe_window < 1:
        raise ValueError("probe_window must be >= 1")
    b, _ = op.weights.bounds(-probe_window, -1)
    witness = F.smallest_nonnegative(probe_window)
    note = "" if witness is not None else f"witness not found <= {probe_window}"
    return BoundedBelowApplicability(b > 0 and witness is not None, b, witness, probe_window, note)


def thm84_condition(
    op: OperatorSpec,
    F: IndexSet,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
    probe_window: int = 1000,
    m_i: int | None = None,
) -> tuple[BoundedBelowApplicability, Verdict | None]:
    """Hypothesis check, then the limit condition at a non-negative witness.

    Forward shifts use :func:`eq65_forward`, backward shifts
    :func:`backward_condition` (the backward variant carries the same
    hypothesis on the negative weights).
    """
    app = thm84_applicability(op, F, probe_window)
    if not app.applicable:
        return app, None
    witness = app.witness if m_i is None else m_i
    if witness < 0:
        raise AdmissibilityError("the bounded-below variant needs a witness m_i >= 0")
    evaluate = eq65_forward if op.kind is Kind.BILATERAL_FORWARD else backward_condition
    return app, evaluate(op, F, witness, sched, th)


def direct_sum_condition(
    ds: DirectSumSpec,
    m_i: int,
    h_p: int,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Max of the two component products for each side, traces ``eq25`` and ``eq26``."""
    _require_kind(ds.left, Kind.BILATERAL_FORWARD)
    _require_kind(ds.right, Kind.BILATERAL_FORWARD)
    _require_member(ds.left_space, m_i)
    _require_member(ds.right_space, h_p, "right witness")
    check_schedule(ds.left, ds.left_space, sched.powers)
    check_schedule(ds.right, ds.right_space, sched.powers)
    lp, lm = forward_traces(ds.left.weights, m_i, sched.powers)
    rp, rm = forward_traces(ds.right.weights, h_p, sched.powers)
    return decay_verdict(
        {"eq25": [max(a, b) for a, b in zip(lp, rp)], "eq26": [max(a, b) for a, b in zip(lm, rm)]},
        sched.powers,
        th,
        condition="thm28",
        witness=m_i,
        right_witness=h_p,
    )


def unilateral_partial_sums(w: WeightSequence, m: int, N: int) -> list[float]:
    """``sum(ln w_{m+j} for j in 1..n)`` for n = 1..N."""
    return [w.log_sum(m + 1, m + 1 + n) for n in range(1, N + 1)]


def structural_bound(w: WeightSequence, start: int) -> float | None:
    """Exact sup over n >= 1 of sum ln w_j, j in [start, start+n), when finite and known.

    Available when the rule is periodic from ``start`` on with a non-positive
    sum over one period; None otherwise.
    """
    p = w.rule.periodic_tail(start)
    if p is None or w.log_sum(start, start + p) > 0:
        return None
    return max(w.log_sum(start, start + k) for k in range(1, p + 1))


def _running_max(xs: list[float]) -> list[float]:
    out, best = [], -math.inf
    for x in xs:
        best = max(best, x)
        out.append(best)
    return out


def unilateral_limsup(
    op: OperatorSpec,
    F: IndexSet,
    m_i: int,
    N: int,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Unbounded growth of ``w_{m_i+1} ... w_{m_i+n}`` for a unilateral backward shift."""
    _require_kind(op, Kind.UNILATERAL_BACKWARD)
    _require_member(F, m_i)
    if N < 1:
        raise ValueError("N must be >= 1")
    partial = unilateral_partial_sums(op.weights, m_i, N)
    powers, stride = admissible_powers(op, F, N)
    return growth_verdict(
        {"partial": partial, "running_max": _running_max(partial)},
        structural_bound(op.weights, m_i + 1),
        th,
        condition="unilateral",
        witness=m_i,
        admissible=bool(powers),
        admissible_stride=stride,
    )


def direct_sum_unilateral(
    ds: DirectSumSpec,
    m_i: int,
    h_p: int,
    N: int,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """Unbounded growth of the smaller of the two component products."""
    _require_kind(ds.left, Kind.UNILATERAL_BACKWARD)
    _require_kind(ds.right, Kind.UNILATERAL_BACKWARD)
    _require_member(ds.left_space, m_i)
    _require_member(ds.right_space, h_p, "right witness")
    left = unilateral_partial_sums(ds.left.weights, m_i, N)
    right = unilateral_partial_sums(ds.right.weights, h_p, N)
    smaller = [min(a, b) for a, b in zip(left, right)]
    bounds = [b for b in (structural_bound(ds.left.weights, m_i + 1), structural_bound(ds.right.weights, h_p + 1)) if b is not None]
    return growth_verdict(
        {"min": smaller, "running_max": _running_max(smaller)},
        min(bounds) if bounds else None,
        th,
        condition="corollary",
        witness=m_i,
        right_witness=h_p,
    )


@dataclass(frozen=True)
class TransferRow:
    index: int
    distortion: float
    final_window_max: float
    passed: bool


@dataclass(frozen=True)
class TransferReport:
    witness: int
    log_tol: float
    triggered: bool
    witness_window_max: float
    rows: tuple[TransferRow, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    @property
    def note(self) -> str:
        return "" if self.triggered else "antecedent not triggered"


def _power_trace(op: OperatorSpec, m: int, powers) -> list[float]:
    return [power_product(op, m, n).log_value for n in powers]


def lemma35_probe(
    op: OperatorSpec,
    F: IndexSet,
    sched: PowerSchedule,
    m_i: int,
    others,
    tol: float,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> TransferReport:
    """Decay of ``op^{n_k} e_{m_i}`` transferred to the other basis vectors of M.

    Whenever the witness trace ends its last window below ``ln tol``, each other
    index must end below ``ln tol + C``, with C the log-distortion between the
    two products: the weights between the indices, plus the same number of
    weights at the far end bounded by the largest ``|ln w|`` in the window.
    """
    if not op.kind.bilateral:
        raise KindError("needs an invertible (bilateral) weighted shift")
    _require_member(F, m_i)
    check_schedule(op, F, sched.powers)
    others = list(others)
    for m in others:
        _require_member(F, m, "index")
    span = sched.last + max([abs(m) for m in others + [m_i]]) + 1
    inv = _invertibility(op.weights, -span, span)
    if not inv["bounded"]:
        raise KindError("weights are not bounded away from 0 and infinity on the queried window")
    big = max(abs(math.log(inv["inf"])), abs(math.log(inv["sup"])))
    log_tol = math.log(tol)
    W = th.window
    base = _power_trace(op, m_i, sched.powers)[-W:]
    triggered = all(x < log_tol for x in base)
    rows = []
    for m in others:
        lo, hi = min(m, m_i), max(m, m_i)
        gap = math.fsum(abs(op.weights.log_weight(j)) for j in range(lo, hi))
        distortion = gap + (hi - lo) * big
        tail = _power_trace(op, m, sched.powers)[-W:]
        worst = max(tail)
        rows.append(TransferRow(m, distortion, worst, (not triggered) or worst < log_tol + distortion))
    return TransferReport(m_i, log_tol, triggered, max(base), tuple(rows))


def limit_condition(
    op: OperatorSpec,
    F: IndexSet,
    m_i: int,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> Verdict:
    """The condition matching the operator kind, sampled up to the schedule's last power."""
    if op.kind is Kind.BILATERAL_FORWARD:
        return eq65_forward(op, F, m_i, sched, th)
    if op.kind is Kind.BILATERAL_BACKWARD:
        return backward_condition(op, F, m_i, sched, th)
    _require_kind(op, Kind.UNILATERAL_BACKWARD)
    check_schedule(op, F, sched.powers)
    return unilateral_limsup(op, F, m_i, sched.last, th)
