"""Basis-spanned subspaces, represented by their index sets.

A subspace M spanned by ``{e_m : m in F}`` is identified with F.  F is stored
as residue classes modulo ``p`` plus finitely many extra members (``includes``)
and removed members (``excludes``), intersected with the operator's domain.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterator

from subshift.core.weights import Domain


@dataclass(frozen=True)
class IndexSet:
    modulus: int
    residues: frozenset[int]
    domain: Domain = Domain.BILATERAL
    includes: frozenset[int] = field(default_factory=frozenset)
    excludes: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        p = int(self.modulus)
        if p < 1:
            raise ValueError("modulus must be >= 1")
        domain = Domain(self.domain)
        residues = frozenset(int(r) for r in self.residues)
        if any(not 0 <= r < p for r in residues):
            raise ValueError(f"residues must lie in [0, {p - 1}]")
        includes = frozenset(int(i) for i in self.includes)
        excludes = frozenset(int(e) for e in self.excludes)
        if includes & excludes:
            raise ValueError("includes and excludes must be disjoint")
        if domain is Domain.UNILATERAL and any(i < 0 for i in includes | excludes):
            raise ValueError("unilateral index sets live in N")
        # canonical form: adjustments only where they change membership
        includes = frozenset(i for i in includes if i % p not in residues)
        excludes = frozenset(e for e in excludes if e % p in residues)
        object.__setattr__(self, "modulus", p)
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "residues", residues)
        object.__setattr__(self, "includes", includes)
        object.__setattr__(self, "excludes", excludes)

    @classmethod
    def residue_class(cls, modulus: int, residues, domain=Domain.BILATERAL, includes=(), excludes=()):
        return cls(modulus, frozenset(residues), Domain(domain), frozenset(includes), frozenset(excludes))

    @classmethod
    def full(cls, domain=Domain.BILATERAL) -> "IndexSet":
        return cls.residue_class(1, {0}, domain)

    @property
    def degenerate(self) -> bool:
        """True when the set is finite, i.e. M is zero or finite-dimensional."""
        return not self.residues

    def __contains__(self, m: int) -> bool:
        return self.contains(m)

    def contains(self, m: int) -> bool:
        if not self.domain.contains(m):
            return False
        if m in self.excludes:
            return False
        if m in self.includes:
            return True
        return m % self.modulus in self.residues

    def residue_member(self, m: int) -> bool:
        return m % self.modulus in self.residues

    @property
    def exceptions(self) -> frozenset[int]:
        return self.includes | self.excludes

    def enumerate(self, lo: int, hi: int) -> list[int]:
        """Members in the inclusive window [lo, hi], increasing."""
        if self.domain is Domain.UNILATERAL:
            lo = max(lo, 0)
        if hi < lo:
            return []
        p = self.modulus
        found = set()
        for r in self.residues:
            start = lo + ((r - lo) % p)
            found.update(range(start, hi + 1, p))
        found -= self.excludes
        found.update(i for i in self.includes if lo <= i <= hi)
        return sorted(found)

    def iter_by_magnitude(self, limit: int) -> Iterator[int]:
        """Members with |m| <= limit, ordered by |m| then by sign (negative first)."""
        for k in range(0, limit + 1):
            for m in ((-k, k) if k else (0,)):
                if self.contains(m):
                    yield m

    def first_members(self, count: int, lo: int, hi: int) -> list[int]:
        members = self.enumerate(lo, hi)
        members.sort(key=lambda m: (abs(m), m))
        return members[:count]

    def nearest_member(self, limit: int = 10_000) -> int | None:
        return next(self.iter_by_magnitude(limit), None)

    def smallest_nonnegative(self, limit: int) -> int | None:
        for m in range(0, limit + 1):
            if self.contains(m):
                return m
        return None

    def with_domain(self, domain: Domain) -> "IndexSet":
        return IndexSet(self.modulus, self.residues, Domain(domain), self.includes, self.excludes)


def perp(F: IndexSet) -> IndexSet:
    """Index set of the orthogonal complement of the subspace spanned by F.

    The complement of the full lattice is representable (empty residues) and
    reported through ``degenerate``.
    """
    residues = frozenset(range(F.modulus)) - F.residues
    return IndexSet(F.modulus, residues, F.domain, includes=F.excludes, excludes=F.includes)


def _lift(F: IndexSet, modulus: int) -> frozenset[int]:
    return frozenset(r for r in range(modulus) if r % F.modulus in F.residues)


def relation(A: IndexSet, B: IndexSet) -> str:
    """Set relation between two index sets on a common domain.

    One of ``equal``, ``subset`` (A strictly inside B), ``superset``,
    ``disjoint`` or ``other``.  Exact: outside the finitely many adjusted
    indices membership is decided by residues modulo lcm of the moduli.
    """
    if A.domain is not B.domain:
        raise ValueError("index sets live on different domains")
    L = A.modulus * B.modulus // gcd(A.modulus, B.modulus)
    ra, rb = _lift(A, L), _lift(B, L)
    points = [x for x in A.exceptions | B.exceptions if A.domain.contains(x)]

    def included(X, Y, rx, ry):
        return rx <= ry and all(Y.contains(x) for x in points if X.contains(x))

    a_in_b = included(A, B, ra, rb)
    b_in_a = included(B, A, rb, ra)
    if a_in_b and b_in_a:
        return "equal"
    if a_in_b:
        return "subset"
    if b_in_a:
        return "superset"
    if not (ra & rb) and not any(A.contains(x) and B.contains(x) for x in points):
        return "disjoint"
    return "other"
