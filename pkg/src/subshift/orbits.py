"""Constructive and empirical side: criterion vectors and truncated orbits.

Orbits run in a finite window of the sequence space.  Mass pushed out of the
window is accounted as "leaked norm" and reported.  Orbit powers start at 1;
only powers that leave M invariant are sampled.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

from subshift.core.index_set import IndexSet, perp, relation
from subshift.core.operators import Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.vector import SparseVector
from subshift.core.verdict import CriterionThresholds, Status, Verdict
from subshift.criteria import DEFAULT_THRESHOLDS, limit_condition
from subshift.errors import (
    AdmissibilityError,
    ConditionRefused,
    DegenerateSubspaceError,
    DomainError,
    HorizonError,
    KindError,
    SubshiftError,
)
from subshift.invariance import check_schedule, is_power_invariant
from subshift.shifts import adjoint, apply, apply_power, apply_right_inverse_power

MEMBERSHIP_TOL = 1e-12


@dataclass(frozen=True)
class TruncationWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.hi < self.lo:
            raise ValueError("empty window")

    @classmethod
    def of_size(cls, size: int, kind: Kind) -> "TruncationWindow":
        if kind.bilateral:
            lo = -(size // 2)
            return cls(lo, lo + size - 1)
        return cls(0, size - 1)

    @property
    def dimension(self) -> int:
        return self.hi - self.lo + 1

    def __contains__(self, m: int) -> bool:
        return self.lo <= m <= self.hi


def _check_in_span(F: IndexSet, v: SparseVector, what: str) -> None:
    outside = [k for k in v if not F.contains(k)]
    if outside:
        raise AdmissibilityError(f"{what} has support outside M at {outside[:5]}")


@dataclass(frozen=True)
class CriterionVector:
    x: SparseVector
    placements: tuple[int, ...]
    tail_bound: float
    errors: tuple[float, ...]
    verdict: Verdict | None = None


def _refuse(op, F, m_i, sched, th) -> Verdict:
    try:
        verdict = limit_condition(op, F, m_i, sched, th)
    except KindError as exc:
        raise ConditionRefused(str(exc)) from exc
    if verdict.status is not Status.SATISFIED:
        raise ConditionRefused(f"limit condition {verdict.status.value} at horizon {verdict.horizon}", verdict)
    return verdict


def default_witness(F: IndexSet, window: int = 10_000) -> int:
    """Smallest non-negative member of F, else the member closest to 0."""
    m = F.smallest_nonnegative(window)
    if m is None:
        m = F.nearest_member(window)
    if m is None:
        raise DegenerateSubspaceError("no member of the index set near the origin")
    return m


def build_criterion_vector(
    op: OperatorSpec,
    F: IndexSet,
    targets,
    eps: float,
    sched: PowerSchedule,
    m_i: int | None = None,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
) -> CriterionVector:
    """``x = sum_j S^{n_j} y_j`` with powers n_j placed greedily along the schedule.

    With budget ``b_j = eps * 2**-(j+1)`` each new placement n_j must satisfy
    ``||S^{n_j} y_j|| <= b_j``, ``||S^{n_j - n_i} y_j|| <= b_j`` and
    ``||T^{n_j - n_i} y_i|| <= b_j / j`` for every earlier placement i.  Then
    ``||T^{n_i} x - y_i|| <= eps`` for every i; the largest triangle-inequality
    bound, computed from exact norms, is returned as ``tail_bound``.
    """
    targets = [SparseVector(y) for y in targets]
    for y in targets:
        _check_in_span(F, y, "target")
    check_schedule(op, F, sched.powers)
    verdict = _refuse(op, F, default_witness(F) if m_i is None else m_i, sched, th)

    placements: list[int] = []
    queue = iter(sched.powers)
    for j, y in enumerate(targets):
        budget = eps * 2.0 ** -(j + 1)
        for n in queue:
            if apply_right_inverse_power(op, y, n).norm() > budget:
                continue
            if any(apply_right_inverse_power(op, y, n - ni).norm() > budget for ni in placements):
                continue
            if any(apply_power(op, yi, n - ni).norm() > budget / j for yi, ni in zip(targets, placements)):
                continue
            placements.append(n)
            break
        else:
            raise HorizonError(f"schedule exhausted before placing target {j} (last power {sched.last})")

    x = SparseVector()
    for y, n in zip(targets, placements):
        x = x + apply_right_inverse_power(op, y, n)
    errors = []
    for i, ni in enumerate(placements):
        later = math.fsum(
            apply_right_inverse_power(op, y, nj - ni).norm() for y, nj in zip(targets[i + 1 :], placements[i + 1 :])
        )
        earlier = math.fsum(apply_power(op, y, ni - nj).norm() for y, nj in zip(targets[:i], placements[:i]))
        errors.append(later + earlier)
    return CriterionVector(x, tuple(placements), max(errors, default=0.0), tuple(errors), verdict)


@dataclass(frozen=True)
class TargetResult:
    target_id: int
    target: SparseVector
    hit: bool
    first_hit_power: int | None
    distance: float  # at the first hit, else the closest approach seen


@dataclass(frozen=True)
class DensityReport:
    targets: tuple[TargetResult, ...]
    eps: float
    n_iter: int
    iterations_run: int
    leaked_norm_max: float
    leaked_history: tuple[float, ...] = ()
    distances_at: dict = field(default_factory=dict)

    @property
    def hit_rate(self) -> float:
        if not self.targets:
            return 1.0
        return sum(t.hit for t in self.targets) / len(self.targets)

    @property
    def hits(self) -> int:
        return sum(t.hit for t in self.targets)


def default_grid(F: IndexSet, window: TruncationWindow, G: int = 2) -> list[SparseVector]:
    """``±e_m`` and ``±(e_a + e_b)/sqrt(2)`` for the first G members of F in the window."""
    members = F.first_members(G, window.lo, window.hi)
    grid = []
    for m in members:
        grid += [SparseVector.unit(m), SparseVector.unit(m, -1.0)]
    r = 1 / math.sqrt(2)
    for a, b in itertools.combinations(members, 2):
        v = SparseVector({a: r, b: r})
        grid += [v, -v]
    return grid


def density_experiment(
    op: OperatorSpec,
    F: IndexSet,
    x: SparseVector,
    grid,
    eps: float,
    n_iter: int,
    window: TruncationWindow,
    stop_when_all_hit: bool = False,
    watch=(),
) -> DensityReport:
    """Iterate ``v <- op v`` from x inside the window and look for eps-hits on the grid.

    A power is sampled only when it leaves M invariant and the iterate lies in
    M up to ``MEMBERSHIP_TOL`` outside F.  ``watch`` lists powers at which the
    distances to every target are recorded regardless of hits.
    """
    grid = [SparseVector(y) for y in grid]
    outside = [k for k in x if k not in window]
    if outside:
        raise DomainError(f"window [{window.lo}, {window.hi}] too small for the initial vector (support {outside[:5]})")
    for y in grid:
        _check_in_span(F, y, "grid target")
        if any(k not in window for k in y):
            raise DomainError("grid target outside the window")
    watch = set(watch)
    first_hit: list[int | None] = [None] * len(grid)
    best = [math.inf] * len(grid)
    distances_at: dict[int, list[float]] = {}
    leaked_sq = 0.0
    history = []
    v = x
    n = 0
    for n in range(1, n_iter + 1):
        v = apply(op, v)
        dropped = [c for k, c in v.items() if k not in window]
        if dropped:
            leaked_sq += math.fsum(c * c for c in dropped)
            v = SparseVector({k: c for k, c in v.items() if k in window})
        history.append(math.sqrt(leaked_sq))
        if not is_power_invariant(op, F, n):
            continue
        off = math.sqrt(math.fsum(c * c for k, c in v.items() if not F.contains(k)))
        if off > MEMBERSHIP_TOL:
            continue
        if n in watch:
            distances_at[n] = [(v - y).norm() for y in grid]
        for t, y in enumerate(grid):
            if first_hit[t] is not None:
                continue
            d = (v - y).norm()
            if d < eps:
                first_hit[t], best[t] = n, d
            else:
                best[t] = min(best[t], d)
        if stop_when_all_hit and all(h is not None for h in first_hit) and not (watch - set(distances_at)):
            break
    results = tuple(
        TargetResult(t, y, first_hit[t] is not None, first_hit[t], best[t]) for t, y in enumerate(grid)
    )
    return DensityReport(results, eps, n_iter, n, math.sqrt(leaked_sq), tuple(history), distances_at)


@dataclass(frozen=True)
class ProbeResult:
    found: bool
    z: SparseVector | None = None
    n: int | None = None
    dist_x: float | None = None
    dist_y: float | None = None
    candidates_searched: int = 0


def _perturbations(support, resolution: float, eps: float, limit: int):
    """Coordinate offsets on the support, multiples of ``resolution`` of norm < eps,
    smallest norm first."""
    if not support or resolution <= 0:
        return [SparseVector()]
    levels = max(0, math.ceil(eps / resolution) - 1)
    steps = [k * resolution for k in range(-levels, levels + 1)]
    combos = []
    for offs in itertools.product(steps, repeat=len(support)):
        norm = math.sqrt(sum(o * o for o in offs))
        if norm < eps:
            combos.append((norm, offs))
        if len(combos) >= limit * 4:
            break
    combos.sort(key=lambda c: c[0])
    return [SparseVector(dict(zip(support, offs))) for _, offs in combos[:limit]]


def transitivity_probe(
    op: OperatorSpec,
    F: IndexSet,
    x_target: SparseVector,
    y_target: SparseVector,
    eps: float,
    sched,
    grid_resolution: float,
    max_candidates: int = 2000,
) -> ProbeResult:
    """Search z near x and an admissible n with ``T^n z`` near y.

    Candidates are ``x' + S^n y`` and ``x'`` for grid perturbations x' of x; a
    negative answer only speaks for the searched grid.
    """
    powers = list(sched.powers if isinstance(sched, PowerSchedule) else sched)
    if not powers:
        raise ValueError("empty schedule")
    x_target, y_target = SparseVector(x_target), SparseVector(y_target)
    _check_in_span(F, x_target, "x_target")
    _check_in_span(F, y_target, "y_target")
    perturbations = _perturbations(x_target.support, grid_resolution, eps, max_candidates)
    searched = 0
    for n in powers:
        if not is_power_invariant(op, F, n):
            continue
        try:
            lift = apply_right_inverse_power(op, y_target, n)
        except DomainError:
            lift = None
        for d in perturbations:
            x_prime = x_target + d
            forms = ([x_prime + lift] if lift is not None else []) + [x_prime]
            for z in forms:
                searched += 1
                dx = (x_target - z).norm()
                if dx >= eps:
                    continue
                dy = (apply_power(op, z, n) - y_target).norm()
                if dy < eps:
                    return ProbeResult(True, z, n, dx, dy, searched)
    return ProbeResult(False, candidates_searched=searched)


@dataclass(frozen=True)
class PerpProbeReport:
    verdicts: dict  # name -> Verdict, or an error string
    relation: str | None
    perp_degenerate: bool


def _safe_condition(op, F, m, sched, th):
    try:
        if F.degenerate:
            raise DegenerateSubspaceError("degenerate index set")
        return limit_condition(op, F, default_witness(F) if m is None else m, sched, th)
    except SubshiftError as exc:
        return f"{type(exc).__name__}: {exc}"


def perp_question_probe(
    op: OperatorSpec,
    M1: IndexSet,
    M2: IndexSet,
    sched: PowerSchedule,
    th: CriterionThresholds = DEFAULT_THRESHOLDS,
    m1: int | None = None,
    m2: int | None = None,
    sched_adjoint: PowerSchedule | None = None,
) -> PerpProbeReport:
    """Side-by-side verdicts for (T, M1), (T*, M2) and (T*, M1-perp), plus the
    set relation of M2 to M1-perp.  Reports evidence only.

    ``sched_adjoint`` (default: ``sched``) is used for both adjoint conditions.
    """
    P = perp(M1)
    star = adjoint(op)
    sched_adjoint = sched if sched_adjoint is None else sched_adjoint
    verdicts = {
        "forward_M1": _safe_condition(op, M1, m1, sched, th),
        "adjoint_M2": _safe_condition(star, M2, m2, sched_adjoint, th),
        "adjoint_perp_M1": "DegenerateSubspaceError: perp(M1) is degenerate"
        if P.degenerate
        else _safe_condition(star, P, None, sched_adjoint, th),
    }
    return PerpProbeReport(verdicts, relation(M2, P), P.degenerate)
