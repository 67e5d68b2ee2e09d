"""Shared deterministic generators and assertion helpers."""

from __future__ import annotations

import math

import pytest

from simplexfreedom import IntervalAssignment, SplitMix64, freedom, tighten, validate


def random_valid_assignment(rng: SplitMix64, m: int, tight: bool = False) -> IntervalAssignment:
    """Random assignment satisfying the full validity contract.

    Possibilities are drawn until they sum past 1 with a little margin;
    necessities sit uniformly under them and are rescaled when their sum
    approaches 1.
    """
    while True:
        po = [0.02 + 0.98 * rng.random() for _ in range(m)]
        if sum(po) >= 1.02:
            break
    ne = [p * rng.random() for p in po]
    s = sum(ne)
    if s > 0.95:
        ne = [x * 0.9 / s for x in ne]
    a = validate(ne, po)
    return tighten(a) if tight else a


def random_assignment_with_volume(
    rng: SplitMix64, m: int, lo: float = 1e-3, hi: float = 0.999
) -> IntervalAssignment:
    """Random valid assignment whose freedom lies in [lo, hi], so Monte-Carlo
    comparisons have statistical power."""
    while True:
        a = random_valid_assignment(rng, m)
        if lo <= freedom(a) <= hi:
            return a


def assert_within_4se(closed: float, mean: float, se: float, context: str = ""):
    slack = 4.0 * se
    assert abs(closed - mean) <= slack, (
        f"{context}: closed {closed:.8g} vs MC {mean:.8g} "
        f"differs by {abs(closed - mean):.3g} > 4*SE = {slack:.3g}"
    )


@pytest.fixture
def rng():
    return SplitMix64(20260810)


def fsum_interval(values):
    return math.fsum(values)
