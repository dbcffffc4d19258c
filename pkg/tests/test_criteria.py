from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from conftest import close, oracle_log_sum, rules
from subshift.core import (
    Constant,
    CriterionThresholds,
    DirectSumSpec,
    Kind,
    OperatorSpec,
    Periodic,
    PowerSchedule,
    Status,
    Step,
    Table,
    reflect,
)
from subshift.criteria import (
    backward_condition,
    direct_sum_condition,
    direct_sum_unilateral,
    eq65_forward,
    forward_traces,
    lemma35_probe,
    limit_condition,
    thm19_finite_check,
    thm84_applicability,
    thm84_condition,
    unilateral_limsup,
)
from subshift.errors import AdmissibilityError, KindError

LN2 = math.log(2.0)
K10 = PowerSchedule.arithmetic(2, 10)


def fwd(rule):
    return OperatorSpec.make(Kind.BILATERAL_FORWARD, rule)


def bwd(rule):
    return OperatorSpec.make(Kind.BILATERAL_BACKWARD, rule)


def uni(rule):
    return OperatorSpec.make(Kind.UNILATERAL_BACKWARD, rule)


def evens(op):
    return op.index_set(2, {0})


class TestForwardCondition:
    def test_step_decays_on_both_sides(self):
        op = fwd(Step(0.5, 2.0))
        v = eq65_forward(op, evens(op), 0, K10)
        assert v.status is Status.SATISFIED
        assert math.isclose(v.traces["plus"][-1], -20 * LN2, rel_tol=1e-14)
        assert math.isclose(v.traces["minus"][-1], -20 * LN2, rel_tol=1e-14)
        assert v.details["invertibility"]["bounded"]

    def test_unit_weights_violate(self):
        op = fwd(Constant(1.0))
        v = eq65_forward(op, evens(op), 0, K10)
        assert v.status is Status.VIOLATED
        assert set(v.traces["plus"]) == {0.0}

    def test_reciprocal_step_violates(self):
        op = fwd(Step(2.0, 0.5))
        v = eq65_forward(op, evens(op), 0, K10)
        assert v.status is Status.VIOLATED
        assert math.isclose(v.traces["plus"][-1], 20 * LN2)

    def test_preconditions(self):
        op = fwd(Step(0.5, 2.0))
        with pytest.raises(AdmissibilityError):
            eq65_forward(op, evens(op), 1, K10)
        with pytest.raises(AdmissibilityError):
            eq65_forward(op, evens(op), 0, PowerSchedule.arithmetic(3, 4))
        with pytest.raises(KindError):
            eq65_forward(uni(Constant(2.0)), uni(Constant(2.0)).index_set(1, {0}), 0, K10)

    def test_too_short_horizon_is_inconclusive(self):
        op = fwd(Step(0.5, 2.0))
        v = eq65_forward(op, evens(op), 0, PowerSchedule.arithmetic(2, 3))
        assert v.status is Status.INCONCLUSIVE

    @given(rules(), st.integers(-6, 6), st.integers(1, 12))
    def test_traces_match_direct_products(self, rule, m, K):
        powers = [k for k in range(1, K + 1)]
        plus, minus = forward_traces(fwd(rule).weights, m, powers)
        for n, p, q in zip(powers, plus, minus):
            assert close(p, oracle_log_sum(rule, m, m + n), abs_=1e-11)
            # prod_{j=1-m}^{n-m} 1/w_{-j} = 1 / prod_{i=m-n}^{m-1} w_i
            assert close(q, -oracle_log_sum(rule, m - n, m), abs_=1e-11)


class TestBackwardCondition:
    def test_reflected_step_decays(self):
        op = bwd(reflect(Step(0.5, 2.0)))
        v = backward_condition(op, evens(op), 0, K10)
        assert v.status is Status.SATISFIED
        assert math.isclose(v.traces["plus"][-1], -20 * LN2, rel_tol=1e-14)
        assert math.isclose(v.traces["minus"][-1], -20 * LN2, rel_tol=1e-14)

    def test_literal_step_shares_the_boundary_weight(self):
        # Step{2, 0.5} read literally keeps w_0 = 2 inside the backward product
        op = bwd(Step(2.0, 0.5))
        v = backward_condition(op, evens(op), 0, K10)
        assert math.isclose(v.traces["plus"][-1], -18 * LN2, rel_tol=1e-14)
        assert math.isclose(v.traces["minus"][-1], -20 * LN2, rel_tol=1e-14)

    def test_unit_and_growing_weights_violate(self):
        for rule in (Constant(1.0), Constant(2.0)):
            op = bwd(rule)
            assert backward_condition(op, evens(op), 0, K10).status is Status.VIOLATED

    @given(rules(), st.integers(-6, 6), st.integers(1, 20))
    def test_mirror_of_forward(self, rule, m, K):
        sched = PowerSchedule.arithmetic(1, K)
        f, b = fwd(rule), bwd(reflect(rule))
        full_f, full_b = f.index_set(1, {0}), b.index_set(1, {0})
        vf = eq65_forward(f, full_f, m, sched)
        vb = backward_condition(b, full_b, m, sched)
        assert vf.traces == vb.traces


class TestFiniteCheck:
    def test_single_member_passes(self):
        op = fwd(Step(0.5, 2.0))
        rep = thm19_finite_check(op, evens(op), 0.1, 1, 4)
        assert [r.index for r in rep.rows] == [0]
        assert rep.passed
        assert math.isclose(math.exp(rep.rows[0].log_plus), 0.0625)

    def test_unit_weights_below_two(self):
        op = fwd(Constant(1.0))
        assert thm19_finite_check(op, op.index_set(1, {0}), 2.0, 0, 1).passed

    def test_too_small_power_fails(self):
        op = fwd(Step(0.5, 2.0))
        rep = thm19_finite_check(op, evens(op), 0.1, 1, 2)
        assert not rep.passed and not rep.vacuous

    def test_vacuous_is_distinguished(self):
        op = fwd(Step(0.5, 2.0))
        rep = thm19_finite_check(op, op.index_set(5, {3}), 0.1, 1, 5)
        assert rep.vacuous and not rep.passed


class TestBoundedBelow:
    def test_step(self):
        op = fwd(Step(0.5, 2.0))
        app = thm84_applicability(op, evens(op), 100)
        assert app.applicable and app.b == 2.0 and app.witness == 0

    def test_periodic_odds(self):
        op = fwd(Periodic((0.5, 2.0)))
        app = thm84_applicability(op, op.index_set(2, {1}), 100)
        assert app.applicable and app.b == 0.5 and app.witness == 1

    def test_negative_only_set(self):
        op = fwd(Step(0.5, 2.0))
        F = op.index_set(1, set(), includes={-2, -4})
        app = thm84_applicability(op, F, 50)
        assert not app.applicable and "not found" in app.note
        assert thm84_condition(op, F, K10, probe_window=50) == (app, None)

    def test_condition_uses_witness(self):
        op = fwd(Step(0.5, 2.0))
        app, v = thm84_condition(op, evens(op), K10)
        assert app.witness == 0 and v.status is Status.SATISFIED

    def test_backward_variant(self):
        op = bwd(reflect(Step(0.5, 2.0)))
        _, v = thm84_condition(op, evens(op), K10)
        assert v.details["condition"] == "bac" and v.status is Status.SATISFIED


class TestDirectSums:
    def test_equal_components(self):
        a = fwd(Step(0.5, 2.0))
        ds = DirectSumSpec(a, a, evens(a), evens(a))
        v = direct_sum_condition(ds, 0, 0, K10)
        assert v.status is Status.SATISFIED
        assert math.isclose(v.traces["eq25"][-1], -20 * LN2)

    def test_dominating_component_violates(self):
        a, b = fwd(Step(0.5, 2.0)), fwd(Step(2.0, 0.5))
        v = direct_sum_condition(DirectSumSpec(a, b, evens(a), evens(b)), 0, 0, K10)
        assert v.status is Status.VIOLATED

    @given(rules(), rules(), st.integers(1, 15))
    def test_max_trace_is_pointwise_max(self, r1, r2, K):
        sched = PowerSchedule.arithmetic(1, K)
        a, b = fwd(r1), fwd(r2)
        Fa, Fb = a.index_set(1, {0}), b.index_set(1, {0})
        v = direct_sum_condition(DirectSumSpec(a, b, Fa, Fb), 0, 0, sched)
        va, vb = eq65_forward(a, Fa, 0, sched), eq65_forward(b, Fb, 0, sched)
        assert v.traces["eq25"] == tuple(map(max, va.traces["plus"], vb.traces["plus"]))
        assert v.traces["eq26"] == tuple(map(max, va.traces["minus"], vb.traces["minus"]))

    def test_corollary_examples(self):
        two, one = uni(Constant(2.0)), uni(Constant(1.0))
        full = two.index_set(1, {0})
        assert direct_sum_unilateral(DirectSumSpec(two, two, full, full), 0, 0, 20).status is Status.SATISFIED
        v = direct_sum_unilateral(DirectSumSpec(two, one, full, full), 0, 0, 20)
        assert v.status is Status.VIOLATED and set(v.traces["min"]) == {0.0}


class TestUnilateral:
    def test_rolewicz(self):
        op = uni(Constant(2.0))
        v = unilateral_limsup(op, op.index_set(2, {1}), 1, 20)
        assert v.status is Status.SATISFIED
        assert math.isclose(v.traces["running_max"][-1], 20 * LN2)

    def test_unit_weights_bounded(self):
        op = uni(Constant(1.0))
        v = unilateral_limsup(op, op.index_set(1, {0}), 0, 20)
        assert v.status is Status.VIOLATED and v.bound == 0.0

    def test_periodic_bounded(self):
        op = uni(Periodic((0.5, 2.0)))
        v = unilateral_limsup(op, op.index_set(1, {0}), 0, 20)
        assert v.status is Status.VIOLATED
        assert math.isclose(v.bound, LN2)

    def test_table_prefix_is_inconclusive_when_short(self):
        op = uni(Table(((1, 5.0),), Constant(1.01)))
        v = unilateral_limsup(op, op.index_set(1, {0}), 0, 20)
        assert v.status is Status.INCONCLUSIVE

    def test_unilateral_forward_refused(self):
        op = OperatorSpec.make(Kind.UNILATERAL_FORWARD, Constant(2.0))
        with pytest.raises(KindError, match="can not be subspace-hypercyclic"):
            limit_condition(op, op.index_set(1, {0}), 0, K10)


class TestDecayTransfer:
    def test_step_others(self):
        op = fwd(Step(0.5, 2.0))
        rep = lemma35_probe(op, evens(op), K10, 0, [2, -2], 1e-3)
        assert rep.triggered and rep.passed

    def test_same_index_has_no_distortion(self):
        op = fwd(Step(0.5, 2.0))
        rep = lemma35_probe(op, evens(op), K10, 0, [0], 1e-3)
        assert rep.passed and rep.rows[0].distortion == 0.0

    def test_unit_weights_vacuous(self):
        op = fwd(Constant(1.0))
        rep = lemma35_probe(op, evens(op), K10, 0, [2], 1e-3)
        assert not rep.triggered and rep.passed and rep.note == "antecedent not triggered"

    def test_needs_bilateral(self):
        op = uni(Constant(2.0))
        with pytest.raises(KindError):
            lemma35_probe(op, op.index_set(1, {0}), K10, 0, [2], 1e-3)


@given(rules(), st.integers(1, 30), st.integers(1, 6))
def test_verdicts_recompute_from_traces(rule, K, W):
    th = CriterionThresholds(window=W)
    op = fwd(rule)
    v = eq65_forward(op, op.index_set(1, {0}), 0, PowerSchedule.arithmetic(1, K), th)
    status, margin = v.recompute()
    assert status is v.status and margin == v.margin
    u = uni(rule)
    g = unilateral_limsup(u, u.index_set(1, {0}), 0, K, th)
    assert g.recompute() == (g.status, g.margin)


def test_thresholds_validated():
    with pytest.raises(ValueError):
        CriterionThresholds(satisfy_log=1.0)
    with pytest.raises(ValueError):
        CriterionThresholds(window=0)
