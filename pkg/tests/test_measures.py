"""Closed-form measures: worked values, invariants, and the subset scan."""

from __future__ import annotations

import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from simplexfreedom import (
    AssignmentClass,
    CapExceeded,
    DomainError,
    IntervalAssignment,
    SplitMix64,
    ValidationError,
    classify,
    freedom,
    freedom_conditional,
    hartley_nonspecificity,
    mc_freedom_conditional,
    measure_report,
    normed_freedom,
    subset_scan,
    tighten,
    validate,
    yager_ambiguity,
)

from conftest import assert_within_4se, random_valid_assignment


@st.composite
def valid_assignments(draw, min_m=2, max_m=5):
    m = draw(st.integers(min_m, max_m))
    seed = draw(st.integers(0, 2**48))
    return random_valid_assignment(SplitMix64(seed), m)


class TestFreedom:
    @pytest.mark.parametrize(
        "ne,po,expected",
        [
            ([0.6, 0.2], [0.8, 0.4], 0.2),
            ([0.6, 0.0], [1.0, 0.4], 0.4),
            ([0.4, 0.0], [1.0, 0.6], 0.6),
            ([0.3, 0.3], [0.7, 0.7], 0.4),
            ([0, 0, 0], [0.5, 0.5, 0.5], 0.25),
            ([0, 0, 0], [1.0, 0.5, 0.5], 0.50),
        ],
    )
    def test_worked_values(self, ne, po, expected):
        assert freedom(validate(ne, po)) == pytest.approx(expected, abs=1e-12)

    @pytest.mark.parametrize("m", [2, 3, 5, 8])
    def test_vacuous_is_exactly_one(self, m):
        assert freedom(validate([0.0] * m, [1.0] * m)) == 1.0

    def test_point_is_exactly_zero(self):
        assert freedom(validate([0.2, 0.3, 0.5], [0.2, 0.3, 0.5])) == 0.0

    def test_pinned_coordinate_is_exactly_zero(self):
        assert freedom(validate([0.0, 0.4, 0.0], [1.0, 0.4, 1.0])) == 0.0

    def test_cap(self):
        m = 25
        a = validate([0.0] * m, [1.0] * m)
        with pytest.raises(CapExceeded):
            freedom(a)
        assert freedom(a, force_cap=True) == 1.0

    def test_rejects_single_option_instances(self):
        sub = IntervalAssignment(("only",), (0.0,), (1.0,))
        with pytest.raises(ValidationError):
            freedom(sub)

    @settings(max_examples=60, deadline=None)
    @given(valid_assignments())
    def test_bounds(self, a):
        f = freedom(a)
        assert 0.0 <= f <= 1.0

    @settings(max_examples=60, deadline=None)
    @given(valid_assignments())
    def test_tightening_invariance(self, a):
        assert freedom(tighten(a)) == pytest.approx(freedom(a), abs=1e-12)

    def test_weak_monotonicity(self, rng):
        for _ in range(80):
            m = 2 + int(rng.random() * 4)
            a = random_valid_assignment(rng, m)
            f = freedom(a)
            k = int(rng.random() * m)
            # raising a possibility can only add volume
            po2 = list(a.po)
            po2[k] = po2[k] + (1.0 - po2[k]) * rng.random()
            assert freedom(validate(a.ne, po2)) >= f - 1e-12
            # raising a necessity can only remove volume
            ne2 = list(a.ne)
            ne2[k] = ne2[k] + (a.po[k] - ne2[k]) * rng.random()
            if sum(ne2) <= 1.0:
                assert freedom(validate(ne2, a.po)) <= f + 1e-12

    def test_strict_monotonicity_under_room_condition(self, rng):
        # when the other necessities leave room below 1 - po_i (and po_i < 1,
        # all widths positive), growing po_i strictly grows the region
        checked = 0
        while checked < 40:
            m = 2 + int(rng.random() * 4)
            a = random_valid_assignment(rng, m, tight=True)
            if min(a.widths) < 0.01:
                continue
            f = freedom(a)
            if not 0.0 < f < 1.0:
                continue
            for k in range(m):
                others_ne = sum(a.ne) - a.ne[k]
                if a.po[k] < 0.99 and others_ne < 1.0 - a.po[k] - 0.01:
                    po2 = list(a.po)
                    po2[k] = min(1.0, po2[k] + 0.01)
                    assert freedom(validate(a.ne, po2)) > f
                    checked += 1
                    break

    def test_extreme_one_only_for_vacuous(self, rng):
        for _ in range(30):
            a = random_valid_assignment(rng, 3)
            if classify(a) is not AssignmentClass.VACUOUS:
                assert freedom(a) < 1.0


class TestConditionalFreedom:
    def test_q_one_reduces_to_freedom(self, rng):
        for m in (2, 3, 4, 5):
            a = random_valid_assignment(rng, m)
            assert freedom_conditional(a, 1.0) == pytest.approx(
                freedom(a), abs=1e-12
            )

    def test_two_option_worked_case(self):
        sub = IntervalAssignment(("a", "b"), (0.0, 0.0), (0.5, 0.5))
        assert freedom_conditional(sub, 0.5) == pytest.approx(0.5, abs=1e-15)

    def test_three_option_case_matches_sampling_oracle(self):
        sub = IntervalAssignment(("a", "b", "c"), (0.0, 0.0, 0.0), (0.3, 0.3, 0.3))
        closed = freedom_conditional(sub, 0.6)
        assert closed == pytest.approx(0.09, abs=1e-12)
        est = mc_freedom_conditional(sub, 0.6, 200_000, 11)
        assert_within_4se(closed, est.mean, est.std_error, "conditional M=3")

    @pytest.mark.parametrize("q", [0.0, -0.2, 1.0 + 1e-6])
    def test_domain(self, q):
        a = validate([0, 0], [1, 1])
        with pytest.raises(DomainError):
            freedom_conditional(a, q)


class TestNormedFreedom:
    def test_three_option_square_root(self):
        assert normed_freedom(validate([0, 0, 0], [0.5, 0.5, 0.5])) == 0.5

    def test_two_options_equals_freedom(self, rng):
        for _ in range(20):
            a = random_valid_assignment(rng, 2)
            assert normed_freedom(a) == freedom(a)

    def test_vacuous(self):
        assert normed_freedom(validate([0, 0, 0, 0], [1, 1, 1, 1])) == 1.0


class TestPossibilityOnlyMeasures:
    def test_yager_worked_values(self):
        assert yager_ambiguity(validate([0.6, 0.2], [0.8, 0.4])) == pytest.approx(
            0.4, abs=1e-12
        )
        assert yager_ambiguity(validate([0.6, 0.0], [1.0, 0.4])) == pytest.approx(
            0.2, abs=1e-12
        )

    def test_yager_crisp_singleton(self):
        assert yager_ambiguity(validate([0, 0, 0], [1, 0, 0])) == pytest.approx(
            0.0, abs=1e-12
        )

    def test_hartley_worked_values(self):
        assert hartley_nonspecificity(
            validate([0.4, 0.0], [1.0, 0.6])
        ) == pytest.approx(0.6, abs=1e-12)
        assert hartley_nonspecificity(
            validate([0.3, 0.3], [0.7, 0.7])
        ) == pytest.approx(0.7, abs=1e-12)
        assert hartley_nonspecificity(
            validate([0, 0, 0], [0.5, 0.5, 0.5])
        ) == pytest.approx(0.5 * math.log2(3), abs=1e-12)

    def test_hartley_crisp(self):
        assert hartley_nonspecificity(validate([0, 0], [1, 0])) == 0.0

    def test_hartley_ignores_top_possibility(self):
        low = validate([0, 0, 0], [0.5, 0.5, 0.5])
        high = validate([0, 0, 0], [1.0, 0.5, 0.5])
        assert hartley_nonspecificity(low) == hartley_nonspecificity(high)
        assert freedom(high) == pytest.approx(2 * freedom(low), abs=1e-12)

    def test_orderings_oppose_freedom(self):
        # ambiguity ranks the two-option cases opposite to freedom
        a1 = validate([0.6, 0.2], [0.8, 0.4])
        a2 = validate([0.6, 0.0], [1.0, 0.4])
        assert yager_ambiguity(a1) > yager_ambiguity(a2)
        assert freedom(a1) < freedom(a2)
        # and so does the bit count on the second pair
        b1 = validate([0.4, 0.0], [1.0, 0.6])
        b2 = validate([0.3, 0.3], [0.7, 0.7])
        assert hartley_nonspecificity(b1) < hartley_nonspecificity(b2)
        assert freedom(b1) > freedom(b2)

    def test_first_order_uncertainty_separation(self):
        # point probabilities: no second-order uncertainty, yet A and I > 0
        a = validate([0.6, 0.4], [0.6, 0.4])
        assert freedom(a) == 0.0
        assert yager_ambiguity(a) > 0.0
        assert hartley_nonspecificity(a) > 0.0


class TestMeasureReport:
    def test_worked_case(self):
        rep = measure_report(validate([0.6, 0.2], [0.8, 0.4]))
        assert rep.freedom == pytest.approx(0.2, abs=1e-12)
        assert rep.yager_ambiguity == pytest.approx(0.4, abs=1e-12)
        # (0.8-0.4)*log2(1) + 0.4*log2(2) = 0.4
        assert rep.hartley_nonspecificity == pytest.approx(0.4, abs=1e-12)
        assert rep.normed_freedom == pytest.approx(0.2, abs=1e-12)
        assert rep.m == 2

    def test_vacuous_two_options(self):
        rep = measure_report(validate([0, 0], [1, 1]))
        assert rep.freedom == 1.0
        assert rep.yager_ambiguity == pytest.approx(0.5, abs=1e-12)
        assert rep.hartley_nonspecificity == pytest.approx(1.0, abs=1e-12)
        assert rep.normed_freedom == 1.0

    def test_point(self):
        rep = measure_report(validate([0.3, 0.7], [0.3, 0.7]))
        assert rep.freedom == 0.0
        assert rep.normed_freedom == 0.0

    def test_with_conditional(self):
        rep = measure_report(validate([0, 0], [1, 1]), q=0.5)
        assert rep.q == 0.5
        assert rep.conditional_freedom == pytest.approx(0.5, abs=1e-12)


class TestSubsetScan:
    def test_one_point_valued_complement(self):
        a = validate([0.0, 0.0, 0.5], [0.5, 0.5, 0.5])
        scan = subset_scan(a)
        assert len(scan.entries) == 1
        entry = scan.entries[0]
        assert entry.indices == (0, 1)
        assert entry.q == pytest.approx(0.5, abs=1e-12)
        assert entry.conditional_freedom == pytest.approx(0.5, abs=1e-12)
        assert scan.omitted == 2

    def test_all_interval_valued(self):
        a = validate([0.1, 0.1, 0.1, 0.1], [0.9, 0.9, 0.9, 0.9])
        scan = subset_scan(a)
        assert scan.entries == ()
        assert scan.omitted == 2**4 - 4 - 2

    def test_all_point_valued(self):
        a = validate([0.2, 0.3, 0.5], [0.2, 0.3, 0.5])
        scan = subset_scan(a)
        assert len(scan.entries) == 3
        assert scan.omitted == 0
        assert all(e.conditional_freedom == 0.0 for e in scan.entries)

    def test_requires_three_options(self):
        with pytest.raises(ValidationError):
            subset_scan(validate([0, 0], [1, 1]))

    def test_zero_mass_subset(self):
        # the complement absorbs all mass; the retained pair has none left
        a = validate([0.0, 0.0, 1.0], [0.0, 0.0, 1.0])
        scan = subset_scan(a)
        pair = [e for e in scan.entries if e.indices == (0, 1)]
        assert pair and pair[0].q == 0.0
        assert pair[0].conditional_freedom == 0.0
