from __future__ import annotations

import math
import time

import pytest

from subshift.core import BlockInterleaved, Constant, Domain, Periodic, Status, Step
from subshift.constructors import herrero_construction, make_family, rolewicz_example
from subshift.criteria import unilateral_limsup
from subshift.errors import ConstructionError
from subshift.invariance import admissible_powers, is_power_invariant


def test_families():
    assert make_family("constant", {"lam": 2}).rule == Constant(2.0)
    assert make_family("step", {"pos": 0.5, "neg": 2}).rule == Step(0.5, 2.0)
    assert make_family("periodic", {"values": [0.5, 2]}).rule == Periodic((0.5, 2.0))
    w = make_family("block_interleaved", {"low": 0.5, "high": 2, "lengths": [1, 2, 4, 8]}, Domain.UNILATERAL)
    assert w.rule == BlockInterleaved(0.5, 2.0, (1, 2, 4, 8)) and w.domain is Domain.UNILATERAL


@pytest.mark.parametrize(
    "name, params",
    [("constant", {"value": 0}), ("step", {"pos": -1, "neg": 2}), ("periodic", {"values": [1, 0]}), ("nope", {})],
)
def test_family_rejects_bad_parameters(name, params):
    with pytest.raises(ValueError):
        make_family(name, params)


def test_herrero_witness():
    t = time.perf_counter()
    b = herrero_construction(0.5, 2.0, [2, 4, 8, 16, 32], 2)
    assert time.perf_counter() - t < 1.0
    assert b.verdict_fwd.status is Status.SATISFIED and b.verdict_bwd.status is Status.SATISFIED
    assert b.verdict_fwd.horizon == 5 and b.verdict_bwd.horizon == 5
    assert all(n % 2 == 0 and is_power_invariant(b.op, b.M1, n) for n in b.sched_fwd)
    assert all(is_power_invariant(b.adjoint_op, b.M2, n) for n in b.sched_bwd)


def test_herrero_is_deterministic():
    a = herrero_construction(0.5, 2.0, [2, 4, 8, 16, 32], 2)
    b = herrero_construction(0.5, 2.0, [2, 4, 8, 16, 32], 2)
    assert a == b
    assert [a.weights.weight_at(n) for n in range(-300, 300)] == [b.weights.weight_at(n) for n in range(-300, 300)]


def test_herrero_short_horizon_fails_with_diagnostics():
    with pytest.raises(ConstructionError) as info:
        herrero_construction(0.5, 2.0, [1], 2)
    bundle = info.value.diagnostics["bundle"]
    assert bundle.verdict_fwd.status is Status.INCONCLUSIVE
    assert bundle.verdict_bwd.status is Status.INCONCLUSIVE


@pytest.mark.parametrize("args", [(1.5, 2.0, [2, 4], 2), (0.5, 2.0, [2, 4], 1), (0.5, 2.0, [4, 2], 2)])
def test_herrero_rejects_bad_parameters(args):
    with pytest.raises(ValueError):
        herrero_construction(*args)


def test_rolewicz_example():
    ex = rolewicz_example()
    assert 1 in ex.M and 2 not in ex.M and 0 not in ex.M
    assert admissible_powers(ex.op, ex.M, 10)[0] == [2, 4, 6, 8, 10]
    v = unilateral_limsup(ex.op, ex.M, 1, 20)
    assert v.status is Status.SATISFIED
    assert math.isclose(v.traces["running_max"][-1], 20 * math.log(2))
