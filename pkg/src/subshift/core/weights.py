"""Weight rules for weighted shifts.

A rule is a total function from the integers to the positive reals.  A
:class:`WeightSequence` pairs a rule with the domain the operator lives on
(``bilateral`` for l2(Z), ``unilateral`` for l2(N)); only the sequence checks
the domain, rules themselves are evaluated anywhere on Z.  This keeps adjoint
reindexing (which looks one index outside N for the unused weight w_0 of a
unilateral backward shift) free of special cases.

Every rule knows how to sum ``ln w_j`` over a half-open index range without
touching each index when its structure allows it.  All weight products in the
package go through :func:`log_sum`.
"""

from __future__ import annotations

import math
import threading
from bisect import bisect_right
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Union

from subshift.errors import DomainError

# Table windows and explicit enumeration fall back to per-index evaluation.
_ENUMERATION_LIMIT = 2_000_000


class Domain(str, Enum):
    BILATERAL = "bilateral"
    UNILATERAL = "unilateral"

    def contains(self, n: int) -> bool:
        return self is Domain.BILATERAL or n >= 0


def _check_positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be a positive finite real, got {value!r}")
    return value


def _counted_log_sum(pairs) -> float:
    """Sum of count * ln(value) over (count, value) pairs with nonzero count."""
    return math.fsum(c * math.log(v) for c, v in pairs if c)


@dataclass(frozen=True)
class Constant:
    value: float

    def __post_init__(self):
        object.__setattr__(self, "value", _check_positive("value", self.value))

    def at(self, n: int) -> float:
        return self.value

    def log_sum(self, a: int, b: int) -> float:
        return (b - a) * math.log(self.value) if b > a else 0.0

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        return self.value, self.value

    def periodic_tail(self, start: int) -> int | None:
        return 1


@dataclass(frozen=True)
class Step:
    """``pos`` on indices >= 0, ``neg`` on indices < 0."""

    pos: float
    neg: float

    def __post_init__(self):
        object.__setattr__(self, "pos", _check_positive("pos", self.pos))
        object.__setattr__(self, "neg", _check_positive("neg", self.neg))

    def at(self, n: int) -> float:
        return self.pos if n >= 0 else self.neg

    def log_sum(self, a: int, b: int) -> float:
        if b <= a:
            return 0.0
        n_neg = max(0, min(b, 0) - a)
        n_pos = max(0, b - max(a, 0))
        return _counted_log_sum([(n_pos, self.pos), (n_neg, self.neg)])

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        vals = []
        if lo < 0:
            vals.append(self.neg)
        if hi >= 0:
            vals.append(self.pos)
        return min(vals), max(vals)

    def periodic_tail(self, start: int) -> int | None:
        return 1 if start >= 0 else None


@dataclass(frozen=True)
class Periodic:
    """``values[n mod p]`` with mathematical modulo."""

    values: tuple[float, ...]

    def __post_init__(self):
        vals = tuple(_check_positive("periodic value", v) for v in self.values)
        if not vals:
            raise ValueError("Periodic needs at least one value")
        object.__setattr__(self, "values", vals)

    @property
    def period(self) -> int:
        return len(self.values)

    def at(self, n: int) -> float:
        return self.values[n % self.period]

    def log_sum(self, a: int, b: int) -> float:
        if b <= a:
            return 0.0
        p = self.period
        full, rem = divmod(b - a, p)
        counts = [full] * p
        for i in range(rem):
            counts[(a + i) % p] += 1
        return _counted_log_sum(zip(counts, self.values))

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        if hi - lo + 1 >= self.period:
            return min(self.values), max(self.values)
        vals = [self.at(n) for n in range(lo, hi + 1)]
        return min(vals), max(vals)

    def periodic_tail(self, start: int) -> int | None:
        return self.period


class _BlockLayout:
    """Block boundaries on N for a BlockInterleaved rule, grown on demand.

    Blocks listed in ``lengths`` come first; afterwards each block is the
    previous one scaled by the ratio of the last two listed lengths (rounded
    up), or repeated when only one length is listed.
    """

    def __init__(self, lengths: tuple[int, ...]):
        self.lengths = list(lengths)
        self.ratio = Fraction(lengths[-1], lengths[-2]) if len(lengths) > 1 else Fraction(1)
        self.starts = [0]
        self.low_before = [0]  # low-valued indices in [0, starts[k])
        self._k = 0
        self._lock = threading.Lock()

    def _next_length(self) -> int:
        if self._k < len(self.lengths):
            return self.lengths[self._k]
        prev = self._extra_prev
        nxt = math.ceil(prev * self.ratio)
        return nxt

    def _grow(self) -> None:
        length = self._next_length()
        self._extra_prev = length
        is_low = self._k % 2 == 0
        self.starts.append(self.starts[-1] + length)
        self.low_before.append(self.low_before[-1] + (length if is_low else 0))
        self._k += 1

    def ensure(self, n: int) -> None:
        if self.starts[-1] > n:
            return
        with self._lock:
            while self.starts[-1] <= n:
                self._grow()

    def block_of(self, n: int) -> int:
        self.ensure(n)
        return bisect_right(self.starts, n) - 1

    def is_low(self, n: int) -> bool:
        return self.block_of(n) % 2 == 0

    def low_prefix(self, n: int) -> int:
        """Number of low-valued indices in [0, n)."""
        if n <= 0:
            return 0
        k = self.block_of(n - 1)
        partial = n - self.starts[k]
        return self.low_before[k] + (partial if k % 2 == 0 else 0)

    def block_ends(self, count: int) -> list[int]:
        """Exclusive end index of each of the first ``count`` blocks."""
        with self._lock:
            while len(self.starts) <= count:
                self._grow()
        return self.starts[1 : count + 1]


@lru_cache(maxsize=64)
def block_layout(lengths: tuple[int, ...]) -> _BlockLayout:
    return _BlockLayout(lengths)


@dataclass(frozen=True)
class BlockInterleaved:
    """Alternating blocks of ``low`` and ``high`` weights.

    On N the first block carries ``low``, the second ``high`` and so on.
    Negative indices mirror the positive ones with the two values exchanged:
    ``w(-1 - i)`` is ``high`` exactly when ``w(i)`` is ``low``.
    """

    low: float
    high: float
    block_lengths: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "low", _check_positive("low", self.low))
        object.__setattr__(self, "high", _check_positive("high", self.high))
        lengths = tuple(int(x) for x in self.block_lengths)
        if not lengths or lengths[0] < 1:
            raise ValueError("block_lengths must be a non-empty list of positive integers")
        if any(b <= a for a, b in zip(lengths, lengths[1:])):
            raise ValueError("block_lengths must be strictly increasing")
        object.__setattr__(self, "block_lengths", lengths)

    @property
    def layout(self) -> _BlockLayout:
        return block_layout(self.block_lengths)

    def at(self, n: int) -> float:
        if n >= 0:
            return self.low if self.layout.is_low(n) else self.high
        return self.high if self.layout.is_low(-1 - n) else self.low

    def _counts(self, a: int, b: int) -> tuple[int, int]:
        """(low count, high count) of indices in [a, b)."""
        layout = self.layout
        n_low = n_high = 0
        lo, hi = max(a, 0), b
        if hi > lo:
            low = layout.low_prefix(hi) - layout.low_prefix(lo)
            n_low += low
            n_high += (hi - lo) - low
        lo, hi = a, min(b, 0)
        if hi > lo:
            # n in [lo, hi) <-> i = -1 - n in [-hi, -lo), values exchanged
            low_i = layout.low_prefix(-lo) - layout.low_prefix(-hi)
            n_high += low_i
            n_low += (hi - lo) - low_i
        return n_low, n_high

    def log_sum(self, a: int, b: int) -> float:
        if b <= a:
            return 0.0
        n_low, n_high = self._counts(a, b)
        return _counted_log_sum([(n_low, self.low), (n_high, self.high)])

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        n_low, n_high = self._counts(lo, hi + 1)
        vals = ([self.low] if n_low else []) + ([self.high] if n_high else [])
        return min(vals), max(vals)

    def periodic_tail(self, start: int) -> int | None:
        return None


@dataclass(frozen=True)
class Table:
    """Finite overrides on top of a default rule."""

    entries: tuple[tuple[int, float], ...]
    default: "Rule"

    def __post_init__(self):
        items = self.entries.items() if isinstance(self.entries, dict) else self.entries
        clean = tuple(sorted((int(k), _check_positive(f"entry {k}", v)) for k, v in items))
        if len({k for k, _ in clean}) != len(clean):
            raise ValueError("duplicate Table index")
        object.__setattr__(self, "entries", clean)

    @cached_property
    def mapping(self) -> dict[int, float]:
        return dict(self.entries)

    def at(self, n: int) -> float:
        value = self.mapping.get(n)
        return self.default.at(n) if value is None else value

    def log_sum(self, a: int, b: int) -> float:
        if b <= a:
            return 0.0
        inside = [(k, v) for k, v in self.entries if a <= k < b]
        if not inside:
            return self.default.log_sum(a, b)
        base = self.default.log_sum(a, b)
        return math.fsum([base] + [math.log(v) - math.log(self.default.at(k)) for k, v in inside])

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        if hi - lo + 1 > _ENUMERATION_LIMIT:
            raise ValueError("Table bounds window too large to enumerate")
        vals = [self.at(n) for n in range(lo, hi + 1)]
        return min(vals), max(vals)

    def periodic_tail(self, start: int) -> int | None:
        if self.entries and start <= self.entries[-1][0]:
            return None
        return self.default.periodic_tail(start)


@dataclass(frozen=True)
class Reindexed:
    """``base(sign * n + offset)``; used for adjoints and reflections."""

    base: "Rule"
    sign: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def _map(self, n: int) -> int:
        return self.sign * n + self.offset

    def at(self, n: int) -> float:
        return self.base.at(self._map(n))

    def _range(self, a: int, b: int) -> tuple[int, int]:
        if self.sign == 1:
            return a + self.offset, b + self.offset
        return -b + 1 + self.offset, -a + 1 + self.offset

    def log_sum(self, a: int, b: int) -> float:
        if b <= a:
            return 0.0
        return self.base.log_sum(*self._range(a, b))

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        a, b = self._range(lo, hi + 1)
        return self.base.bounds(a, b - 1)

    def periodic_tail(self, start: int) -> int | None:
        if self.sign == 1:
            return self.base.periodic_tail(start + self.offset)
        return 1 if isinstance(self.base, Constant) else None


Rule = Union[Constant, Step, Periodic, BlockInterleaved, Table, Reindexed]


def reindex(rule: Rule, sign: int = 1, offset: int = 0) -> Rule:
    """``n -> rule(sign * n + offset)`` with nested reindexings collapsed."""
    if isinstance(rule, Constant):
        return rule
    if isinstance(rule, Reindexed):
        # rule(n) = base(s1 * n + o1); composed: base(s1 * (s * n + o) + o1)
        sign, offset = rule.sign * sign, rule.sign * offset + rule.offset
        rule = rule.base
    if sign == 1 and offset == 0:
        return rule
    return Reindexed(rule, sign, offset)


def reflect(rule: Rule) -> Rule:
    """The rule ``n -> rule(-n)``."""
    return reindex(rule, sign=-1)


@dataclass(frozen=True)
class WeightSequence:
    rule: Rule
    domain: Domain = Domain.BILATERAL

    def __post_init__(self):
        object.__setattr__(self, "domain", Domain(self.domain))

    def check_index(self, n: int) -> None:
        if not self.domain.contains(n):
            raise DomainError(f"index {n} outside the {self.domain.value} domain")

    def weight_at(self, n: int) -> float:
        self.check_index(n)
        return self.rule.at(n)

    def log_weight(self, n: int) -> float:
        return math.log(self.weight_at(n))

    def log_sum(self, a: int, b: int) -> float:
        """``sum(ln w_j for j in range(a, b))``."""
        if b > a:
            self.check_index(a)
        return self.rule.log_sum(a, b)

    def bounds(self, lo: int, hi: int) -> tuple[float, float]:
        """Exact (inf, sup) of the weights over the inclusive window [lo, hi]."""
        if hi < lo:
            raise ValueError("empty window")
        if self.domain is Domain.UNILATERAL:
            lo = max(lo, 0)
        return self.rule.bounds(lo, hi)


def weight_at(w: WeightSequence, n: int) -> float:
    return w.weight_at(n)
