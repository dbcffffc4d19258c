from __future__ import annotations

import math
from collections.abc import Mapping
from typing import Hashable, Iterable

Key = Hashable  # int, or (tag, int) for direct sums


class SparseVector(Mapping):
    """Finitely supported vector; zero coefficients are never stored."""

    __slots__ = ("_data",)

    def __init__(self, data: Mapping | Iterable = ()):
        items = data.items() if isinstance(data, Mapping) else data
        clean: dict = {}
        for k, x in items:
            x = float(x)
            if x != 0.0:
                clean[k] = clean.get(k, 0.0) + x
        self._data = {k: x for k, x in clean.items() if x != 0.0}

    @classmethod
    def unit(cls, m: Key, coefficient: float = 1.0) -> "SparseVector":
        return cls({m: coefficient})

    @classmethod
    def zero(cls) -> "SparseVector":
        return cls()

    def __getitem__(self, k):
        return self._data.get(k, 0.0)

    def __iter__(self):
        return iter(self._data)

    def __len__(self):
        return len(self._data)

    def __contains__(self, k):
        return k in self._data

    def __repr__(self):
        return f"SparseVector({self._data!r})"

    def __eq__(self, other):
        if isinstance(other, SparseVector):
            return self._data == other._data
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._data.items()))

    @property
    def support(self) -> list:
        return sorted(self._data, key=_sort_key)

    def __add__(self, other: "SparseVector") -> "SparseVector":
        out = dict(self._data)
        for k, x in other.items():
            out[k] = out.get(k, 0.0) + x
        return SparseVector(out)

    def __neg__(self) -> "SparseVector":
        return SparseVector({k: -x for k, x in self._data.items()})

    def __sub__(self, other: "SparseVector") -> "SparseVector":
        return self + (-other)

    def __mul__(self, c: float) -> "SparseVector":
        return SparseVector({k: c * x for k, x in self._data.items()})

    __rmul__ = __mul__

    def norm(self) -> float:
        return math.sqrt(math.fsum(x * x for x in self._data.values()))

    def tagged(self, tag: str) -> "SparseVector":
        return SparseVector({(tag, k): x for k, x in self._data.items()})

    def component(self, tag: str) -> "SparseVector":
        return SparseVector({k[1]: x for k, x in self._data.items() if isinstance(k, tuple) and k[0] == tag})


def _sort_key(k):
    return (0, "", k) if isinstance(k, int) else (1, k[0], k[1])


def unit(m: Key) -> SparseVector:
    return SparseVector.unit(m)
