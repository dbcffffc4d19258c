"""Weighted shifts on sequence spaces: weight-product criteria for
subspace-transitivity, power invariance of basis-spanned subspaces, and
truncated orbit experiments."""

from __future__ import annotations

from subshift.core import *  # noqa: F401,F403
from subshift.core import __all__ as _core_all
from subshift.constructors import herrero_construction, make_family, rolewicz_example
from subshift.criteria import (
    backward_condition,
    direct_sum_condition,
    direct_sum_unilateral,
    eq65_forward,
    lemma35_probe,
    thm19_finite_check,
    thm84_applicability,
    thm84_condition,
    unilateral_limsup,
)
from subshift.invariance import admissible_powers, is_power_invariant, perp
from subshift.orbits import (
    TruncationWindow,
    build_criterion_vector,
    density_experiment,
    perp_question_probe,
    transitivity_probe,
)
from subshift.shifts import adjoint, apply, apply_power, power_product, right_inverse_power

__version__ = "0.1.0"

__all__ = list(_core_all) + [
    "adjoint",
    "admissible_powers",
    "apply",
    "apply_power",
    "backward_condition",
    "build_criterion_vector",
    "density_experiment",
    "direct_sum_condition",
    "direct_sum_unilateral",
    "eq65_forward",
    "herrero_construction",
    "is_power_invariant",
    "lemma35_probe",
    "make_family",
    "rolewicz_example",
    "perp",
    "perp_question_probe",
    "power_product",
    "right_inverse_power",
    "thm19_finite_check",
    "thm84_applicability",
    "thm84_condition",
    "transitivity_probe",
    "TruncationWindow",
    "unilateral_limsup",
]
