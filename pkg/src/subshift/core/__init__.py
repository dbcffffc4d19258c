"""Domain types shared by the rest of the package."""

from subshift.core.index_set import IndexSet, perp, relation
from subshift.core.operators import DirectSumSpec, Kind, OperatorSpec
from subshift.core.schedule import PowerSchedule
from subshift.core.vector import SparseVector, unit
from subshift.core.verdict import CriterionThresholds, Status, Verdict
from subshift.core.weights import (
    BlockInterleaved,
    Constant,
    Domain,
    Periodic,
    Reindexed,
    Rule,
    Step,
    Table,
    WeightSequence,
    reflect,
    reindex,
    weight_at,
)

__all__ = [
    "BlockInterleaved",
    "Constant",
    "CriterionThresholds",
    "DirectSumSpec",
    "Domain",
    "IndexSet",
    "Kind",
    "OperatorSpec",
    "Periodic",
    "PowerSchedule",
    "Reindexed",
    "Rule",
    "SparseVector",
    "Status",
    "Step",
    "Table",
    "Verdict",
    "WeightSequence",
    "perp",
    "reflect",
    "reindex",
    "relation",
    "unit",
    "weight_at",
]
