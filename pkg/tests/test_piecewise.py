"""Piecewise functions with assigned breakpoint values.

Covers the one-sided step families (their point values at the origin are the
whole point of the construction), continuity classification, extension to the
one-sided closures, oriented jump bookkeeping, and the combine algebra.
"""

import math

import pytest
from hypothesis import given, strategies as st

from semiflux.intervals import Interval, Orientation
from semiflux.piecewise import (
    Continuity,
    NAMED_FUNCTIONS,
    PiecewiseFn,
    balanced_sgn,
    heaviside,
    heaviside_two_sided,
    indicator,
    named_function,
    sgn,
    sgn_two_sided,
)
from semiflux.smooth import const, gaussian, poly

L, R = Orientation.LEFT, Orientation.RIGHT


class TestStepFamilies:
    def test_heaviside_left_origin_value(self):
        h = heaviside(L)
        assert h(0.0) == 0.0
        assert h(-0.5) == 0.0 and h(0.5) == 1.0

    def test_heaviside_right_origin_value(self):
        h = heaviside(R)
        assert h(0.0) == 1.0

    def test_sgn_left_origin_value(self):
        s = sgn(L)
        assert s(0.0) == -1.0
        assert s(-2.0) == -1.0 and s(2.0) == 1.0

    def test_sgn_right_origin_value(self):
        assert sgn(R)(0.0) == 1.0

    def test_two_sided_variants_unassigned_at_origin(self):
        for f in (heaviside_two_sided(), sgn_two_sided()):
            with pytest.raises(ValueError):
                f(0.0)
            # away from the breakpoint they evaluate fine
            assert math.isfinite(f(0.1))

    def test_balanced_sgn_vanishes_at_origin(self):
        for o in (L, R):
            b = balanced_sgn(o)
            assert b(0.0) == 0.0
            assert b(1.0) == 1.0 and b(-1.0) == -1.0

    def test_balanced_sgn_is_difference_of_heavisides(self):
        # sgn_bal(x) = H_L(x) - H_L(-x), checked pointwise
        b = balanced_sgn(L)
        h = heaviside(L)
        for x in (-2.0, -0.3, 0.0, 0.3, 2.0):
            assert b(x) == pytest.approx(h(x) - h(-x))


class TestLimitsAndClassification:
    def test_one_sided_limits_of_heaviside(self):
        h = heaviside(L)
        assert h.left_limit(0.0) == 0.0
        assert h.right_limit(0.0) == 1.0

    def test_value_or_limit_included_vs_excluded(self):
        f = sgn_two_sided()
        # unassigned at 0: orientation decides which limit stands in
        assert f.value_or_limit(0.0, L) == -1.0
        assert f.value_or_limit(0.0, R) == 1.0
        g = sgn(L)
        assert g.value_or_limit(0.0, L) == -1.0
        assert g.value_or_limit(0.0, R) == -1.0  # assigned value wins

    def test_classify_smooth_point(self):
        f = PiecewiseFn((), (gaussian(),), ())
        assert f.classify(0.0) is Continuity.CONTINUOUS

    def test_classify_two_sided_sgn(self):
        assert sgn_two_sided().classify(0.0) is Continuity.COMPLETELY_DISCONTINUOUS

    def test_classify_one_sided_steps(self):
        assert heaviside(L).classify(0.0) is Continuity.LEFT_SEMICONTINUOUS
        assert heaviside(R).classify(0.0) is Continuity.RIGHT_SEMICONTINUOUS

    def test_is_semicontinuous(self):
        assert heaviside(L).is_semicontinuous(L)
        assert not heaviside(L).is_semicontinuous(R)
        assert heaviside(R).is_semicontinuous(R)


class TestExtend:
    def test_extend_two_sided_sgn_left_equals_sgn_left(self):
        e = sgn_two_sided().extend(L)
        s = sgn(L)
        for x in (-1.0, -0.01, 0.0, 0.01, 1.0):
            assert e(x) == s(x)

    def test_extend_is_fixed_point_on_already_left_sc(self):
        h = heaviside(L)
        e = h.extend(L)
        for x in (-1.0, 0.0, 1.0):
            assert e(x) == h(x)

    def test_extend_open_indicator_closes_right_endpoint(self):
        chi = indicator(Interval.open(0.0, 1.0), assigned=False)
        closed = chi.extend(L)
        target = indicator(Interval.left_open(0.0, 1.0))
        for x in (-0.5, 0.0, 0.5, 1.0, 1.5):
            assert closed(x) == target(x)

    def test_extend_result_is_semicontinuous(self):
        for f in (sgn_two_sided(), heaviside_two_sided()):
            assert f.extend(L).is_semicontinuous(L)
            assert f.extend(R).is_semicontinuous(R)


class TestOrientedJumps:
    def test_sgn_left_jump_masses(self):
        s = sgn(L)
        # left-SC: all the jump mass sits on the right-approach side
        assert s.oriented_jump(0.0, L) == 2.0
        assert s.oriented_jump(0.0, R) == 0.0

    def test_sgn_right_jump_masses(self):
        s = sgn(R)
        assert s.oriented_jump(0.0, L) == 0.0
        assert s.oriented_jump(0.0, R) == 2.0

    def test_left_sc_function_has_no_right_oriented_jump(self):
        for name in ("H_L", "sgn_L"):
            f = named_function(name)
            for b in f.breakpoints:
                assert f.oriented_jump(b, R) == 0.0

    def test_balanced_sgn_splits_its_jump(self):
        # value 0 at the origin sits between the two limits, so each
        # orientation sees exactly half the total discontinuity
        b = balanced_sgn(L)
        assert b.oriented_jump(0.0, L) == 1.0
        assert b.oriented_jump(0.0, R) == 1.0

    def test_jumps_lists_total_discontinuities(self):
        s = sgn(L)
        js = s.jumps()
        assert len(js) == 1
        b, mass = js[0]
        assert b == 0.0 and mass == 2.0

    def test_continuous_breakpoint_reports_no_jump(self):
        # same smooth branch on both sides of a nominal breakpoint
        f = PiecewiseFn((0.0,), (poly([0.0, 1.0]), poly([0.0, 1.0])), values=(0.0,))
        assert f.jumps() == []


class TestAlgebra:
    def test_add_cancels(self):
        h = heaviside(L)
        z = h + h.scaled(-1.0)
        for x in (-1.0, 0.0, 1.0):
            assert z(x) == 0.0

    def test_sgn_left_from_heavisides(self):
        # H_L(x) - H_R(-x) reconstructs sgn_L including the origin value
        h = heaviside(L) - heaviside(R).reflect()
        s = sgn(L)
        for x in (-2.0, -0.5, 0.0, 0.5, 2.0):
            assert h(x) == s(x)

    def test_indicator_idempotent_under_product(self):
        chi = indicator(Interval.left_open(0.0, 1.0))
        sq = chi * chi
        for x in (-0.5, 0.0, 0.5, 1.0, 1.5):
            assert sq(x) == chi(x)

    def test_neg_and_sub(self):
        s = sgn(L)
        assert (-s)(0.0) == 1.0
        d = s - s
        assert d(0.0) == 0.0 and d(1.0) == 0.0

    def test_combine_merges_breakpoints(self):
        f = heaviside(L)
        g = indicator(Interval.left_open(1.0, 2.0))
        h = f + g
        assert set(h.breakpoints) == {0.0, 1.0, 2.0}
        assert h(1.5) == 2.0


class TestReflectWithValueRoundTrips:
    def test_reflect_involution(self):
        s = sgn(L)
        rr = s.reflect().reflect()
        for x in (-1.0, 0.0, 1.0):
            assert rr(x) == s(x)

    def test_reflect_swaps_semicontinuity(self):
        assert heaviside(L).reflect().is_semicontinuous(R)

    def test_with_value_overrides_and_clears(self):
        s = sgn_two_sided().with_value(0.0, 0.0)
        assert s(0.0) == 0.0
        back = s.with_value(0.0, None)
        with pytest.raises(ValueError):
            back(0.0)

    def test_json_round_trip(self):
        for name in NAMED_FUNCTIONS:
            f = named_function(name)
            clone = PiecewiseFn.from_json(f.to_json())
            for x in (-1.5, -0.25, 0.25, 1.5):
                assert clone(x) == f(x), name
            assert clone.breakpoints == f.breakpoints
            assert clone.values == f.values


class TestNamedFunctions:
    def test_registry_has_documented_entries(self):
        for name in ("H_L", "H_R", "sgn_L", "sgn_R", "sgn_twosided", "box"):
            assert name in NAMED_FUNCTIONS

    def test_named_function_rejects_unknown(self):
        with pytest.raises(ValueError):
            named_function("H_diagonal")


points = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


@given(st.sampled_from(["H_twosided", "sgn_twosided"]), points)
def test_extend_fills_unassigned_values_with_the_side_limit(name, x):
    f = named_function(name)
    for o in (L, R):
        assert f.extend(o).value_or_limit(x, o) == f.value_or_limit(x, o)


@given(st.sampled_from(list(NAMED_FUNCTIONS)), points)
def test_extend_only_changes_breakpoint_values(name, x):
    f = named_function(name)
    for o in (L, R):
        if x in f.breakpoints:
            continue
        assert f.extend(o)(x) == f(x)


@given(st.sampled_from(["H_L", "sgn_L", "sgn_R", "box"]), points)
def test_reflect_pointwise(name, x):
    f = named_function(name)
    r = f.reflect()
    try:
        want = f(-x)
    except ValueError:
        with pytest.raises(ValueError):
            r(x)
        return
    assert r(x) == want


@given(st.sampled_from(["H_L", "sgn_L", "box"]), st.sampled_from(["H_R", "sgn_R"]), points)
def test_combine_addition_pointwise(a, b, x):
    f, g = named_function(a), named_function(b)
    assert (f + g)(x) == pytest.approx(f(x) + g(x))


@given(st.sampled_from(list(NAMED_FUNCTIONS)), st.sampled_from([L, R]))
def test_oriented_jump_vanishes_after_matching_extend(name, o):
    # extend(o) aligns each breakpoint value with its o-side limit, so the
    # mirrored orientation sees no jump mass at all
    f = named_function(name).extend(o)
    for b in f.breakpoints:
        assert f.oriented_jump(b, o.mirrored) == 0.0
