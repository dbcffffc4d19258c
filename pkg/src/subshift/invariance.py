"""Power invariance ``op^n M ⊆ M`` for basis-spanned subspaces.

Decided exactly on the residue representation: translating the residue
classes must map them into themselves, and the finitely many adjusted
indices are checked one by one.
"""

from __future__ import annotations

from subshift.core.index_set import IndexSet, perp  # noqa: F401  (perp re-exported)
from subshift.core.operators import Kind, OperatorSpec
from subshift.errors import AdmissibilityError


def _check_domain(op: OperatorSpec, F: IndexSet) -> None:
    if op.domain is not F.domain:
        raise AdmissibilityError(f"{op.kind.value} acts on {op.domain.value} sequences, index set is {F.domain.value}")


def _image(op: OperatorSpec, m: int, n: int) -> int | None:
    """Index of op^n e_m, or None when the image is the zero vector."""
    if op.kind is Kind.UNILATERAL_BACKWARD and m < n:
        return None
    return m + op.kind.step * n


def _image_in(op: OperatorSpec, F: IndexSet, m: int, n: int) -> bool:
    j = _image(op, m, n)
    return j is None or F.contains(j)


def is_power_invariant(op: OperatorSpec, F: IndexSet, n: int) -> bool:
    """True iff ``op^n e_m`` lies in span{e_j : j in F} for every m in F."""
    _check_domain(op, F)
    if n < 1:
        raise ValueError("power must be >= 1")
    p, shift = F.modulus, op.kind.step * n
    if any((r + shift) % p not in F.residues for r in F.residues):
        return False
    # generic members now land in residue classes of F; only images that hit
    # an excluded index, or members that are themselves adjustments, remain
    for e in F.excludes:
        m = e - shift
        if F.contains(m) and _image(op, m, n) == e:
            return False
    return all(_image_in(op, F, i, n) for i in F.includes)


def is_power_invariant_bruteforce(op: OperatorSpec, F: IndexSet, n: int, lo: int, hi: int) -> bool:
    """Window enumeration of the same property; for cross-checks only."""
    _check_domain(op, F)
    for m in F.enumerate(lo, hi):
        j = _image(op, m, n)
        if j is None or not lo <= j <= hi:
            continue
        if not F.contains(j):
            return False
    return True


def admissible_powers(op: OperatorSpec, F: IndexSet, n_max: int) -> tuple[list[int], int | None]:
    """All n <= n_max with op^n M ⊆ M, and their stride when they are g, 2g, 3g, ..."""
    powers = [n for n in range(1, n_max + 1) if is_power_invariant(op, F, n)]
    stride = None
    if powers:
        g = powers[0]
        if powers == list(range(g, n_max + 1, g)):
            stride = g
    return powers, stride


def check_schedule(op: OperatorSpec, F: IndexSet, powers) -> None:
    bad = [n for n in powers if not is_power_invariant(op, F, n)]
    if bad:
        raise AdmissibilityError(f"powers {bad[:5]} do not leave the subspace invariant")
