from __future__ import annotations

import math

import mpmath
import pytest
from hypothesis import settings, strategies as st

from subshift.core import BlockInterleaved, Constant, Periodic, Step, Table

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

mpmath.mp.dps = 40

weight = st.floats(min_value=0.5, max_value=2.0, allow_nan=False)


@st.composite
def rules(draw, allow_table: bool = True):
    """Any rule type with weights in [0.5, 2]."""
    choice = draw(st.sampled_from(["constant", "step", "periodic", "block", "table"] if allow_table else ["constant", "step", "periodic", "block"]))
    if choice == "constant":
        return Constant(draw(weight))
    if choice == "step":
        return Step(draw(weight), draw(weight))
    if choice == "periodic":
        return Periodic(tuple(draw(st.lists(weight, min_size=1, max_size=5))))
    if choice == "block":
        lengths = sorted(set(draw(st.lists(st.integers(1, 9), min_size=1, max_size=4))))
        return BlockInterleaved(draw(st.floats(0.5, 0.95)), draw(st.floats(1.05, 2.0)), tuple(lengths))
    entries = draw(st.dictionaries(st.integers(-30, 30), weight, max_size=6))
    return Table(tuple(entries.items()), Step(draw(weight), draw(weight)))


def oracle_log_sum(rule, a: int, b: int):
    """``sum(ln w_j, a <= j < b)`` by direct multiplication in extended precision."""
    prod = mpmath.mpf(1)
    for j in range(a, b):
        prod *= mpmath.mpf(rule.at(j))
    return mpmath.log(prod)


def close(x: float, y, rel: float = 1e-12, abs_: float = 1e-12) -> bool:
    return abs(mpmath.mpf(x) - y) <= max(abs_, rel * abs(y))


@pytest.fixture
def step_half_two():
    return Step(0.5, 2.0)


@pytest.fixture
def ln2():
    return math.log(2.0)


# acceptance criteria record one line each; printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}
ACCEPTANCE_TOTAL = 10


def acceptance_check(number: int, title: str, ok: bool, detail: str) -> None:
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}  {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    assert ok, ACCEPTANCE_LINES[number]


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in range(1, ACCEPTANCE_TOTAL + 1):
        terminalreporter.write_line(ACCEPTANCE_LINES.get(n, f"criterion {n:2d}  FAIL  (did not complete or not run)"))
