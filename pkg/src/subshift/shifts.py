"""Action of weighted shifts, their powers, right inverses, adjoints and direct sums.

Coefficients of powers are carried as natural logs; a magnitude is turned
into a float only when a vector is materialised.  The right inverse ``S`` of
a shift ``T`` is the shift in the opposite direction with reciprocal weights,
so that ``T S = I``:

* forward ``T e_r = w_r e_{r+1}``  ->  ``S e_r = e_{r-1} / w_{r-1}``
* backward ``B e_n = w_n e_{n-1}`` ->  ``S e_r = e_{r+1} / w_{r+1}``
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from subshift.core.operators import DirectSumSpec, Kind, OperatorSpec
from subshift.core.vector import SparseVector
from subshift.core.weights import WeightSequence, reindex
from subshift.errors import DomainError


@dataclass(frozen=True)
class LogMagnitude:
    log_value: float

    def __add__(self, other: "LogMagnitude") -> "LogMagnitude":
        return LogMagnitude(self.log_value + other.log_value)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


class _Annihilated:
    """Marker for a power that maps the basis vector to zero."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "ANNIHILATED"

    def __bool__(self):
        return False


ANNIHILATED = _Annihilated()


def power_weight_range(op: OperatorSpec, m: int, n: int) -> tuple[int, int]:
    """Half-open range of weight indices whose product is the coefficient of op^n e_m."""
    if op.kind.forward:
        return m, m + n
    return m - n + 1, m + 1


def power_landing(op: OperatorSpec, m: int, n: int) -> int:
    return m + op.kind.step * n


def power_product(op: OperatorSpec, m: int, n: int) -> LogMagnitude | _Annihilated:
    """Log of the coefficient of ``op^n e_m``, or ANNIHILATED when the image is 0."""
    if n < 0:
        raise ValueError("power must be non-negative")
    op.weights.check_index(m)
    if op.kind is Kind.UNILATERAL_BACKWARD and m < n:
        return ANNIHILATED
    a, b = power_weight_range(op, m, n)
    return LogMagnitude(op.weights.log_sum(a, b))


def right_inverse_landing(op: OperatorSpec, m: int, n: int) -> int:
    return m - op.kind.step * n


def right_inverse_power(op: OperatorSpec, m: int, n: int) -> LogMagnitude:
    """Log of the coefficient of ``S^n e_m`` for the right inverse S of op."""
    if n < 0:
        raise ValueError("power must be non-negative")
    op.weights.check_index(m)
    landing = right_inverse_landing(op, m, n)
    if not op.domain.contains(landing):
        raise DomainError(f"S^{n} e_{m} leaves N (the unilateral forward shift has no right inverse there)")
    if op.kind.forward:
        return LogMagnitude(-op.weights.log_sum(m - n, m))
    return LogMagnitude(-op.weights.log_sum(m + 1, m + n + 1))


def _check_support(op: OperatorSpec, v: SparseVector) -> None:
    for k in v:
        if not isinstance(k, int):
            raise DomainError(f"untagged integer indices expected, got {k!r}")
        op.weights.check_index(k)


def apply(op: OperatorSpec, v: SparseVector) -> SparseVector:
    """One application of the shift, using the weights directly."""
    _check_support(op, v)
    out = {}
    step = op.kind.step
    for m, x in v.items():
        if op.kind is Kind.UNILATERAL_BACKWARD and m == 0:
            continue
        out[m + step] = x * op.weights.weight_at(m)
    return SparseVector(out)


def apply_power(op: OperatorSpec, v: SparseVector, n: int) -> SparseVector:
    _check_support(op, v)
    if n == 0:
        return v
    out = {}
    for m, x in v.items():
        lm = power_product(op, m, n)
        if lm is ANNIHILATED:
            continue
        out[power_landing(op, m, n)] = x * lm.value
    return SparseVector(out)


def apply_right_inverse_power(op: OperatorSpec, v: SparseVector, n: int) -> SparseVector:
    _check_support(op, v)
    if n == 0:
        return v
    return SparseVector(
        {right_inverse_landing(op, m, n): x * right_inverse_power(op, m, n).value for m, x in v.items()}
    )


def right_inverse_norm(op: OperatorSpec, v: SparseVector, n: int) -> float:
    """Exact ``||S^n v||`` (S sends distinct basis vectors to distinct ones)."""
    return apply_right_inverse_power(op, v, n).norm()


def power_norm(op: OperatorSpec, v: SparseVector, n: int) -> float:
    return apply_power(op, v, n).norm()


_ADJOINT = {
    Kind.BILATERAL_FORWARD: (Kind.BILATERAL_BACKWARD, -1),
    Kind.BILATERAL_BACKWARD: (Kind.BILATERAL_FORWARD, +1),
    Kind.UNILATERAL_FORWARD: (Kind.UNILATERAL_BACKWARD, -1),
    Kind.UNILATERAL_BACKWARD: (Kind.UNILATERAL_FORWARD, +1),
}


def adjoint(op: OperatorSpec) -> OperatorSpec:
    """Hilbert-space adjoint, again a weighted shift.

    ``T e_r = w_r e_{r+1}`` has adjoint ``T* e_n = w_{n-1} e_{n-1}``, i.e. the
    backward shift with weight ``w(n - 1)`` at index n; the backward-to-forward
    direction shifts the weight index the other way.  For the unilateral
    forward shift the backward weight at index 0 is never used and is taken to
    be ``w(-1)`` of the underlying rule, which keeps adjoint an involution.
    """
    kind, offset = _ADJOINT[op.kind]
    return OperatorSpec(kind, WeightSequence(reindex(op.rule, 1, offset), kind.domain))


def matrix_entry(op: OperatorSpec, r: int, s: int) -> float:
    """``<op e_r, e_s>``."""
    return apply(op, SparseVector.unit(r))[s]


def _split(ds: DirectSumSpec, v: SparseVector) -> dict[str, SparseVector]:
    parts = {"left": {}, "right": {}}
    for k, x in v.items():
        if not (isinstance(k, tuple) and len(k) == 2 and k[0] in parts):
            raise DomainError(f"direct-sum index must be ('left'|'right', m), got {k!r}")
        parts[k[0]][k[1]] = x
    return {tag: SparseVector(d) for tag, d in parts.items()}


def apply_direct_sum(ds: DirectSumSpec, v: SparseVector, n: int = 1) -> SparseVector:
    """``(left (+) right)^n v`` computed componentwise."""
    out = SparseVector()
    for tag, part in _split(ds, v).items():
        op, _ = ds.component(tag)
        image = apply(op, part) if n == 1 else apply_power(op, part, n)
        out = out + image.tagged(tag)
    return out
