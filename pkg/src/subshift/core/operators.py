from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from subshift.core.index_set import IndexSet
from subshift.core.weights import Domain, Rule, WeightSequence


class Kind(str, Enum):
    BILATERAL_FORWARD = "bilateral-forward"
    BILATERAL_BACKWARD = "bilateral-backward"
    UNILATERAL_FORWARD = "unilateral-forward"
    UNILATERAL_BACKWARD = "unilateral-backward"

    @property
    def bilateral(self) -> bool:
        return self in (Kind.BILATERAL_FORWARD, Kind.BILATERAL_BACKWARD)

    @property
    def forward(self) -> bool:
        return self in (Kind.BILATERAL_FORWARD, Kind.UNILATERAL_FORWARD)

    @property
    def domain(self) -> Domain:
        return Domain.BILATERAL if self.bilateral else Domain.UNILATERAL

    @property
    def step(self) -> int:
        """Index displacement of one application: +1 forward, -1 backward."""
        return 1 if self.forward else -1


@dataclass(frozen=True)
class OperatorSpec:
    """A weighted shift.

    Conventions, with ``w = weights``:

    * forward kinds: ``e_r -> w_r e_{r+1}``
    * backward kinds: ``e_n -> w_n e_{n-1}``; unilaterally ``e_0 -> 0``
    """

    kind: Kind
    weights: WeightSequence

    def __post_init__(self):
        kind = Kind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.weights.domain is not kind.domain:
            raise ValueError(
                f"{kind.value} needs {kind.domain.value} weights, got {self.weights.domain.value}"
            )

    @classmethod
    def make(cls, kind, rule: Rule) -> "OperatorSpec":
        kind = Kind(kind)
        return cls(kind, WeightSequence(rule, kind.domain))

    @property
    def domain(self) -> Domain:
        return self.kind.domain

    @property
    def rule(self) -> Rule:
        return self.weights.rule

    def index_set(self, modulus: int, residues, includes=(), excludes=()) -> IndexSet:
        """Index set on this operator's domain."""
        return IndexSet.residue_class(modulus, residues, self.domain, includes, excludes)


@dataclass(frozen=True)
class DirectSumSpec:
    """``left (+) right`` acting on ``left_space (+) right_space``.

    Vectors of the sum are tagged with ``"left"`` / ``"right"``; the two copies
    never mix.
    """

    left: OperatorSpec
    right: OperatorSpec
    left_space: IndexSet
    right_space: IndexSet

    def __post_init__(self):
        for name, op, space in (("left", self.left, self.left_space), ("right", self.right, self.right_space)):
            if space.domain is not op.domain:
                raise ValueError(f"{name} index set domain does not match its operator")

    def component(self, tag: str) -> tuple[OperatorSpec, IndexSet]:
        if tag == "left":
            return self.left, self.left_space
        if tag == "right":
            return self.right, self.right_space
        raise KeyError(f"unknown direct-sum tag {tag!r}")
