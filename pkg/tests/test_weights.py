from __future__ import annotations

import math

import pytest
from hypothesis import given, strategies as st

from conftest import close, oracle_log_sum, rules
from subshift.core import (
    BlockInterleaved,
    Constant,
    Domain,
    Periodic,
    Reindexed,
    Step,
    Table,
    WeightSequence,
    reflect,
    reindex,
)
from subshift.core.weights import block_layout
from subshift.errors import DomainError


@given(rules(), st.integers(-60, 60), st.integers(0, 60))
def test_log_sum_matches_direct_product(rule, a, length):
    assert close(rule.log_sum(a, a + length), oracle_log_sum(rule, a, a + length), abs_=1e-11)


@given(rules(), st.integers(-40, 40), st.integers(0, 30), st.integers(0, 30))
def test_log_sum_is_additive(rule, a, l1, l2):
    whole = rule.log_sum(a, a + l1 + l2)
    parts = rule.log_sum(a, a + l1) + rule.log_sum(a + l1, a + l1 + l2)
    assert math.isclose(whole, parts, rel_tol=1e-12, abs_tol=1e-12)


@given(rules(), st.integers(-50, 50), st.integers(0, 40))
def test_bounds_are_exact_extremes(rule, lo, width):
    hi = lo + width
    vals = [rule.at(n) for n in range(lo, hi + 1)]
    assert rule.bounds(lo, hi) == (min(vals), max(vals))


signs = st.sampled_from([1, -1])


@given(rules(), signs, st.integers(-5, 5), signs, st.integers(-5, 5), st.integers(-30, 30))
def test_nested_reindex_collapses(rule, s1, o1, s2, o2, n):
    r = reindex(reindex(rule, s1, o1), s2, o2)
    assert r.at(n) == rule.at(s1 * (s2 * n + o2) + o1)
    assert not isinstance(getattr(r, "base", None), Reindexed)


@given(rules(), st.integers(-40, 40), st.integers(0, 30))
def test_reflect_log_sum(rule, a, length):
    r = reflect(rule)
    assert close(r.log_sum(a, a + length), oracle_log_sum(r, a, a + length), abs_=1e-11)
    assert reflect(r) == rule


def test_step_values():
    s = Step(0.5, 2.0)
    assert s.at(0) == 0.5 and s.at(7) == 0.5
    assert s.at(-1) == 2.0
    assert s.log_sum(-3, 3) == pytest.approx(0.0, abs=1e-15)


def test_periodic_wraps_negative_indices():
    p = Periodic((0.5, 2.0, 3.0))
    assert [p.at(n) for n in range(-3, 3)] == [0.5, 2.0, 3.0, 0.5, 2.0, 3.0]


def test_block_interleaved_prefix_products_swing():
    b = BlockInterleaved(0.5, 2.0, (1, 2, 4, 8))
    ends = b.layout.block_ends(5)
    sums = [b.log_sum(0, e) / math.log(2) for e in ends]
    assert [round(x, 12) for x in sums] == [-1, 1, -3, 5, -11]


def test_block_interleaved_mirror_swaps_values():
    b = BlockInterleaved(0.5, 2.0, (2, 4, 8))
    for i in range(40):
        assert b.at(-1 - i) == (2.0 if b.at(i) == 0.5 else 0.5)


def test_block_layout_growth_past_listed_lengths():
    layout = block_layout((2, 4))
    ends = layout.block_ends(5)
    assert ends == [2, 6, 14, 30, 62]


def test_block_lengths_must_increase():
    with pytest.raises(ValueError):
        BlockInterleaved(0.5, 2.0, (4, 2))


@pytest.mark.parametrize("bad", [0.0, -1.0, math.inf, math.nan])
def test_non_positive_weights_rejected(bad):
    with pytest.raises(ValueError):
        Constant(bad)


def test_table_overrides_default():
    t = Table(((0, 3.0), (5, 0.25)), Constant(1.0))
    assert t.at(0) == 3.0 and t.at(1) == 1.0 and t.at(5) == 0.25
    assert math.isclose(t.log_sum(-2, 10), math.log(3.0 * 0.25))


def test_unilateral_sequence_rejects_negative_index():
    w = WeightSequence(Constant(2.0), Domain.UNILATERAL)
    with pytest.raises(DomainError):
        w.weight_at(-1)
    with pytest.raises(DomainError):
        w.log_sum(-1, 3)
    assert w.bounds(-10, 3) == (2.0, 2.0)
