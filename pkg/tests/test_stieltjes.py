"""Stieltjes measures, integration, the pairing engine, and norms.

The distributional identities here are checked against closed forms and
against brute-force oracles built from fine partitions, never against the
implementation's own machinery.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semiflux.intervals import Interval, IntervalSet, Orientation
from semiflux.piecewise import (
    PiecewiseFn,
    balanced_sgn,
    heaviside,
    indicator,
    named_function,
    sgn,
    sgn_two_sided,
)
from semiflux.smooth import const, gaussian, identity, poly
from semiflux.smooth import test_function as registry_fn
from semiflux.stieltjes import (
    Measure,
    MeasureKind,
    TopologyMismatchError,
    integrate,
    measure_of,
    norms,
    oriented_jump_masses,
    pair_against_test_derivative,
    total_variation,
)

L, R, STD = Orientation.LEFT, Orientation.RIGHT, Orientation.STANDARD


def iv(text):
    return IntervalSet.parse(text)


class TestMeasureConstruction:
    def test_left_stieltjes_requires_left_sc_distribution(self):
        with pytest.raises(TopologyMismatchError):
            Measure.from_distribution(heaviside(R), L)

    def test_right_stieltjes_requires_right_sc_distribution(self):
        with pytest.raises(TopologyMismatchError):
            Measure.from_distribution(heaviside(L), R)

    def test_matching_orientation_accepted(self):
        m = Measure.from_distribution(heaviside(L), L)
        assert m.kind is MeasureKind.STIELTJES_LEFT

    def test_normalization_at_origin(self):
        f = PiecewiseFn((), (poly([3.0, 1.0]),), ())  # x + 3
        m = Measure.from_distribution(f, STD)
        assert m.distribution(0.0) == 0.0


class TestMeasureOf:
    def test_left_measure_of_heaviside_misses_halfopen_cell(self):
        # the jump sits at 0, and (0,1] starts strictly above it
        m = Measure.from_distribution(heaviside(L), L)
        assert measure_of(m, iv("(0,1]")) == 0.0

    def test_lebesgue_reading_of_unit_interval(self):
        lam = Measure.lebesgue()
        assert measure_of(lam, iv("[0,1]")) == 1.0

    def test_left_measure_captures_jump_from_below(self):
        m = Measure.from_distribution(heaviside(L), L)
        assert measure_of(m, iv("(-1,1]")) == 1.0

    def test_dirac_atom(self):
        d = Measure.dirac(0.5)
        assert measure_of(d, iv("[0,1]")) == 1.0
        assert measure_of(d, iv("(0.5,1]")) == 0.0
        assert measure_of(d, iv("[0.5,1]")) == 1.0

    def test_additivity_away_from_the_jump(self):
        m = Measure.from_distribution(heaviside(L), L)
        total = measure_of(m, iv("(-2,3]"))
        split = measure_of(m, iv("(-2,0.5]")) + measure_of(m, iv("(0.5,3]"))
        assert total == pytest.approx(split) == 1.0

    def test_jump_mass_only_seen_by_straddling_cells(self):
        # cutting exactly at the jump point drops the mass: it lives in the
        # gap between 0 and 0+, visible only to cells that cross it
        m = Measure.from_distribution(heaviside(L), L)
        assert measure_of(m, iv("(-2,0]")) == 0.0
        assert measure_of(m, iv("(0,3]")) == 0.0
        assert measure_of(m, iv("(-2,3]")) == 1.0


class TestTotalVariation:
    def test_point_mass_distribution(self):
        # f_R(x) = 0 below 1, 1 from 1 on: a single unit jump
        f = PiecewiseFn((1.0,), (const(0.0), const(1.0)), (1.0,))
        m = Measure.from_distribution(f, R)
        assert total_variation(m, iv("[0,2)")) == 1.0

    def test_monotone_identity(self):
        lam = Measure.lebesgue()
        assert total_variation(lam, iv("[0,1]")) == pytest.approx(1.0)

    def test_tent_splits_into_monotone_halves(self):
        # x(1-x) rises to 1/4 then falls back: |1/4| + |-1/4| = 1/2
        f = PiecewiseFn((), (poly([0.0, 1.0, -1.0]),), ())
        m = Measure.from_distribution(f, STD)
        assert total_variation(m, iv("[0,1]")) == pytest.approx(0.5, abs=1e-12)

    def test_unbounded_set_rejected(self):
        with pytest.raises(ValueError):
            total_variation(Measure.lebesgue(), iv("(-inf,0]"))

    def test_against_fine_partition_oracle(self):
        # brute force: sum |f(x_{i+1}) - f(x_i)| over a fine grid
        f = PiecewiseFn((), (poly([0.0, 0.0, 1.0, -1.0]),), ())  # x^2 - x^3
        m = Measure.from_distribution(f, STD)
        xs = np.linspace(-0.5, 1.5, 20001)
        oracle = float(np.abs(np.diff([f(x) for x in xs])).sum())
        assert total_variation(m, iv("[-0.5,1.5]")) == pytest.approx(
            oracle, abs=1e-6
        )


class TestIntegrate:
    def test_sifting_against_atom(self):
        phi = PiecewiseFn((), (gaussian(),), ())
        assert integrate(phi, Measure.dirac(0.0), iv("[-1,1]")) == pytest.approx(1.0)

    def test_heaviside_against_lebesgue(self):
        f = heaviside(L)
        assert integrate(f, Measure.lebesgue(), iv("(0,1]")) == pytest.approx(1.0)

    def test_identity_against_lebesgue(self):
        f = PiecewiseFn((), (identity(),), ())
        assert integrate(f, Measure.lebesgue(), iv("[0,1]")) == pytest.approx(0.5)

    def test_gaussian_against_lebesgue_whole_line(self):
        f = PiecewiseFn((), (gaussian(),), ())
        got = integrate(f, Measure.lebesgue(), iv("(-inf,inf)"))
        assert got == pytest.approx(math.sqrt(math.pi), rel=1e-9)

    def test_atom_weight_scales(self):
        phi = PiecewiseFn((), (gaussian(),), ())
        m = Measure.dirac(1.0, weight=3.0)
        assert integrate(phi, m, iv("[0,2]")) == pytest.approx(3.0 * math.exp(-1.0))

    def test_stieltjes_jump_reads_integrand_on_continuity_side(self):
        # d(mu_L from H_L) is a unit atom at 0; the LEFT kind reads the
        # integrand at the point per its left-continuous convention
        m = Measure.from_distribution(heaviside(L), L)
        f = sgn(L)
        got = integrate(f, m, iv("(-1,1]"))
        assert got == pytest.approx(f.value_or_limit(0.0, L))

    def test_indicator_integrand_agrees_with_measure_of(self):
        m = Measure.from_distribution(heaviside(L), L).with_atom(0.25, 2.0)
        s = iv("(-1,0.5]")
        chi = indicator(Interval.left_open(-1.0, 0.5))
        assert integrate(chi, m, s) == pytest.approx(measure_of(m, s))


class TestPairingEngine:
    """The four sign-function pairings that motivate the whole module."""

    @pytest.fixture
    def phi(self):
        return gaussian()

    def test_sgn_left_paired_left(self, phi):
        assert pair_against_test_derivative(sgn(L), phi, L) == pytest.approx(-2.0)

    def test_sgn_right_paired_left_is_invisible(self, phi):
        assert pair_against_test_derivative(sgn(R), phi, L) == pytest.approx(0.0)

    def test_sgn_left_paired_right_is_invisible(self, phi):
        assert pair_against_test_derivative(sgn(L), phi, R) == pytest.approx(0.0)

    def test_sgn_right_paired_right(self, phi):
        assert pair_against_test_derivative(sgn(R), phi, R) == pytest.approx(-2.0)

    def test_balanced_sgn_sees_half_the_mass(self, phi):
        got = pair_against_test_derivative(balanced_sgn(L), phi, L)
        assert got == pytest.approx(-1.0)

    def test_two_sided_sgn_standard_pairing(self, phi):
        got = pair_against_test_derivative(sgn_two_sided(), phi, STD)
        assert got == pytest.approx(-2.0)

    def test_pairing_scales_with_test_function_value(self):
        phi = gaussian(amp=1.0, center=0.3)
        got = pair_against_test_derivative(sgn(L), phi, L)
        assert got == pytest.approx(-2.0 * phi(0.0), rel=1e-9)

    def test_offset_breakpoint(self):
        # step at 1 instead of 0: the boundary term follows the breakpoint
        f = PiecewiseFn((1.0,), (const(0.0), const(1.0)), (0.0,))
        phi = gaussian()
        got = pair_against_test_derivative(f, phi, L)
        assert got == pytest.approx(-phi(1.0), rel=1e-9)

    def test_smooth_function_integrates_by_parts_cleanly(self):
        # no breakpoints: the pairing is exactly -integral of f' phi
        f = PiecewiseFn((), (poly([0.0, 1.0]),), ())
        phi = gaussian()
        got = pair_against_test_derivative(f, phi, L)
        assert got == pytest.approx(-math.sqrt(math.pi), rel=1e-9)


class TestOrientedJumpMasses:
    def test_left_sc_is_invisible_to_right_masses(self):
        for name in ("H_L", "sgn_L"):
            f = named_function(name)
            for _, mass in oriented_jump_masses(f, R):
                assert mass == 0.0

    def test_left_masses_of_sgn_left(self):
        assert oriented_jump_masses(sgn(L), L) == [(0.0, 2.0)]

    def test_mirror_symmetry(self):
        f = sgn(L)
        g = f.reflect()
        left = dict(oriented_jump_masses(f, L))
        right = dict(oriented_jump_masses(g, R))
        # reflection carries the left mass at b to a right mass at -b
        # with opposite sign
        for b, mass in left.items():
            assert right[-b] == pytest.approx(-mass)


class TestNorms:
    def test_indicator_norms_on_unit_interval(self):
        chi = indicator(Interval.left_open(0.0, 1.0))
        rec = norms(chi, iv("(0,1]"), ps=(1.0, 2.0))
        assert rec.sup == pytest.approx(1.0)
        assert rec.lp[1.0] == pytest.approx(1.0)
        assert rec.lp[2.0] == pytest.approx(1.0)
        # bv picks up the edge value and both unit jumps
        assert rec.bv >= rec.sup

    def test_linear_ramp(self):
        f = PiecewiseFn((), (identity(),), ())
        rec = norms(f, iv("[0,1]"), ps=(1.0, 2.0))
        assert rec.sup == pytest.approx(1.0)
        assert rec.lp[1.0] == pytest.approx(0.5)
        assert rec.lp[2.0] == pytest.approx(1.0 / math.sqrt(3.0), rel=1e-9)

    def test_to_dict_keys(self):
        rec = norms(indicator(Interval.left_open(0.0, 1.0)), iv("(0,1]"), ps=(1.0, 2.0))
        d = rec.to_dict()
        assert set(d) == {"sup", "bv", "l1", "l2"}


# --- property tests ---------------------------------------------------------

coeffs = st.lists(
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False), min_size=1, max_size=3
)


@st.composite
def piecewise_polys(draw):
    """Random piecewise polynomial on [0,1] with a few interior breakpoints."""
    nbp = draw(st.integers(min_value=0, max_value=2))
    bps = sorted(
        draw(
            st.lists(
                st.floats(min_value=0.1, max_value=0.9),
                min_size=nbp,
                max_size=nbp,
                unique=True,
            )
        )
    )
    pieces = [poly(draw(coeffs)) for _ in range(len(bps) + 1)]
    values = tuple(
        draw(st.one_of(st.none(), st.floats(min_value=-2.0, max_value=2.0)))
        for _ in bps
    )
    return PiecewiseFn(tuple(bps), tuple(pieces), values)


@settings(max_examples=60, deadline=None)
@given(piecewise_polys())
def test_norm_chain_on_unit_interval(f):
    # on a unit-measure set: every L^p norm <= sup norm <= BV norm
    rec = norms(f, iv("[0,1]"), ps=(1.0, 2.0, 4.0))
    slack = 1e-8
    for p, v in rec.lp.items():
        assert v <= rec.sup + slack, p
    assert rec.sup <= rec.bv + slack


@settings(max_examples=60, deadline=None)
@given(piecewise_polys())
def test_lp_norms_increase_with_p_on_unit_interval(f):
    rec = norms(f, iv("[0,1]"), ps=(1.0, 2.0, 4.0))
    assert rec.lp[1.0] <= rec.lp[2.0] + 1e-8
    assert rec.lp[2.0] <= rec.lp[4.0] + 1e-8


@settings(max_examples=40, deadline=None)
@given(
    st.sampled_from(["H_L", "sgn_L", "H_R", "sgn_R", "box"]),
    st.sampled_from(["gaussian", "x-gaussian", "hermite-gaussian-2"]),
)
def test_pairing_is_linear_in_the_step(name, phi_name):
    f = named_function(name)
    phi = registry_fn(phi_name)
    one = pair_against_test_derivative(f, phi, L)
    three = pair_against_test_derivative(f.scaled(3.0), phi, L)
    assert three == pytest.approx(3.0 * one, rel=1e-9, abs=1e-9)


@settings(max_examples=30, deadline=None)
@given(st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
def test_jump_mass_total_is_orientation_independent(shift):
    # the full two-sided jump splits between the orientations
    f = PiecewiseFn(
        (float(shift),), (const(0.0), const(1.0)), (0.25,)
    )
    total_l = sum(m for _, m in oriented_jump_masses(f, L))
    total_r = sum(m for _, m in oriented_jump_masses(f, R))
    assert total_l + total_r == pytest.approx(1.0)
