"""Distributions with point atoms, their primitives, and the mollified delta.

The regularized-delta section carries its own closed-form oracle: pairing
the Cauchy kernel of width eps against exp(-x^2) gives exactly
exp(eps^2) * erfc(eps), which pins both the value and the first-order
convergence rate without trusting any quadrature in this package.
"""

import math

import pytest
from hypothesis import given, settings, strategies as st

from semiflux.distributions import (
    Distribution,
    RegularizedDelta,
    delta,
    delta_prime,
    distributional_derivative,
    euler_character,
    pair,
    primitive,
    regularized_pair,
)
from semiflux.intervals import Orientation
from semiflux.piecewise import (
    PiecewiseFn,
    balanced_sgn,
    heaviside,
    named_function,
    sgn,
    sgn_two_sided,
)
from semiflux.smooth import const, gaussian, poly
from semiflux.smooth import test_function as registry_fn

L, R, STD = Orientation.LEFT, Orientation.RIGHT, Orientation.STANDARD


class TestAtoms:
    def test_delta_sifts(self):
        assert pair(delta(), gaussian()) == pytest.approx(1.0)

    def test_delta_off_origin(self):
        assert pair(delta(0.7), gaussian()) == pytest.approx(math.exp(-0.49))

    def test_delta_prime_pairs_with_negative_slope(self):
        # <delta', phi> = -phi'(0); for x e^{-x^2} the slope at 0 is 1
        phi = registry_fn("x-gaussian")
        assert pair(delta_prime(), phi) == pytest.approx(-1.0)

    def test_delta_prime_kills_even_functions(self):
        assert pair(delta_prime(), gaussian()) == pytest.approx(0.0, abs=1e-12)

    def test_weights_scale(self):
        assert pair(delta(weight=2.5), gaussian()) == pytest.approx(2.5)

    def test_atom_order_validation(self):
        with pytest.raises(ValueError):
            Distribution(atoms=((0.0, 2, 1.0),))
        with pytest.raises(ValueError):
            Distribution(atoms=((math.inf, 0, 1.0),))

    def test_addition_and_scaling(self):
        d = delta() + delta_prime(1.0)
        assert d.atom_total == 1.0
        assert d.scaled(3.0).atom_total == 3.0
        phi = gaussian()
        assert pair(d.scaled(2.0), phi) == pytest.approx(2.0 * pair(d, phi))

    def test_pair_requires_decay(self):
        with pytest.raises(ValueError):
            pair(delta(), poly([0.0, 1.0]))


class TestDistributionalDerivative:
    def test_sgn_left_gives_two_delta(self):
        d = distributional_derivative(sgn(L), L)
        assert d.atoms == ((0.0, 0, 2.0),)
        assert pair(d, gaussian()) == pytest.approx(2.0)

    def test_heaviside_gives_delta(self):
        d = distributional_derivative(heaviside(L), L)
        assert d.atoms == ((0.0, 0, 1.0),)

    def test_smooth_function_gives_regular_part_only(self):
        f = PiecewiseFn((), (gaussian(),), ())
        d = distributional_derivative(f, STD)
        assert d.atoms == ()
        # regular part is the pointwise derivative -2x e^{-x^2}
        for x in (-1.0, 0.3, 2.0):
            assert d.regular(x) == pytest.approx(-2.0 * x * math.exp(-x * x))

    def test_removable_mismatch_is_not_a_jump(self):
        # same line on both sides, odd value at the breakpoint
        f = PiecewiseFn((0.0,), (poly([0.0, 1.0]), poly([0.0, 1.0])), (5.0,))
        d = distributional_derivative(f, STD)
        assert d.atoms == ()

    def test_derivative_ignores_orientation_for_atom_weight(self):
        for o in (L, R):
            d = distributional_derivative(sgn_two_sided(), o)
            assert d.atoms == ((0.0, 0, 2.0),)

    def test_pairing_consistency_with_integration_by_parts(self):
        # <f', phi> computed from atoms+regular should equal -<f, phi'>
        # in the standard reading for a genuine two-sided object
        from semiflux.stieltjes import pair_against_test_derivative

        f = sgn_two_sided()
        phi = gaussian()
        lhs = pair(distributional_derivative(f, STD), phi)
        rhs = -pair_against_test_derivative(f, phi, STD)
        assert lhs == pytest.approx(rhs, rel=1e-9)


class TestPrimitive:
    def test_unit_delta_integrates_to_left_heaviside(self):
        p = primitive(delta(), L)
        h = heaviside(L)
        for x in (-1.0, 0.0, 1.0):
            assert p(x) == h(x)

    def test_doubled_delta(self):
        p = primitive(delta(weight=2.0), L)
        assert p(1.0) == 2.0 and p(0.0) == 0.0

    def test_shifted_atom_right_orientation(self):
        p = primitive(delta(1.0), R)
        assert p(0.5) == 0.0
        assert p(1.0) == 1.0  # right-continuous: value joins from above
        assert p(2.0) == 1.0

    def test_centered_primitive_is_half_sign(self):
        # symmetric around zero: levels -1/2 and +1/2, midpoint value 0
        p = primitive(delta(), L, centered=True)
        assert p(0.0) == 0.0
        b = balanced_sgn(L)
        for x in (-1.0, 0.0, 1.0):
            assert 2.0 * p(x) == pytest.approx(b(x))

    def test_primitive_requires_one_sided_orientation(self):
        with pytest.raises(ValueError):
            primitive(delta(), STD)

    def test_round_trip_through_derivative(self):
        d = delta(0.5, weight=1.5)
        p = primitive(d, L)
        back = distributional_derivative(p, L)
        assert back.atoms == ((0.5, 0, 1.5),)


class TestRegularizedDelta:
    def test_kernel_is_normalized(self):
        # the primitive runs from -1/2 to +1/2 across the whole line
        r = RegularizedDelta(0.05)
        assert r.primitive(math.inf) - r.primitive(-math.inf) == pytest.approx(1.0)
        assert r.primitive(0.0) == pytest.approx(0.0)

    def test_pair_against_gaussian_matches_erfc_oracle(self):
        # closed form: integral of the width-eps Cauchy kernel against
        # exp(-x^2) equals exp(eps^2) erfc(eps)
        for eps in (1e-1, 1e-2, 1e-3):
            r = RegularizedDelta(eps)
            oracle = math.exp(eps * eps) * math.erfc(eps)
            assert r.pair(gaussian()) == pytest.approx(oracle, rel=1e-8), eps

    def test_small_eps_recovers_point_value(self):
        r = RegularizedDelta(1e-3)
        assert abs(regularized_pair(r, gaussian()) - 1.0) < 5e-3

    def test_error_halves_with_eps(self):
        e1 = abs(RegularizedDelta(1e-3).pair(gaussian()) - 1.0)
        e2 = abs(RegularizedDelta(5e-4).pair(gaussian()) - 1.0)
        assert e1 / e2 == pytest.approx(2.0, abs=0.25)

    def test_odd_test_function_pairs_to_zero(self):
        r = RegularizedDelta(1e-2)
        assert r.pair(registry_fn("x-gaussian")) == pytest.approx(0.0, abs=1e-10)

    def test_epsilon_must_be_positive(self):
        with pytest.raises(ValueError):
            RegularizedDelta(0.0)
        with pytest.raises(ValueError):
            RegularizedDelta(-1.0)


class TestEulerCharacter:
    def test_semicontinuous_steps_have_character_zero(self):
        # on the circled line, one jump leaves one arc: 1 - 1 = 0
        for name in ("H_L", "H_R", "sgn_L", "sgn_R"):
            f = named_function(name)
            o = L if name.endswith("_L") else R
            assert euler_character(f, o) == 0

    def test_standard_reading_of_two_sided_sgn(self):
        # interval topology: one jump cuts the graph into two arcs
        assert euler_character(sgn_two_sided(), STD) == 1

    def test_constant_has_character_one(self):
        f = PiecewiseFn((), (const(2.0),), ())
        assert euler_character(f, L) == 1
        assert euler_character(f, STD) == 1

    def test_isolated_point_adds_one(self):
        # balanced sgn: value 0 matches neither limit, an isolated dot
        assert euler_character(balanced_sgn(L), L) == 1

    def test_two_jumps_on_the_circle(self):
        f = named_function("box")
        # two jumps, two arcs on the circled line: 2 - 2 = 0
        assert euler_character(f, L) == 0
        # standard: three arcs minus two jumps
        assert euler_character(f, STD) == 1


# --- properties --------------------------------------------------------------


@settings(max_examples=40, deadline=None)
@given(
    st.floats(min_value=-2.0, max_value=2.0, allow_nan=False),
    st.floats(min_value=0.25, max_value=4.0),
)
def test_delta_sifting_everywhere(point, width):
    phi = gaussian(width=width)
    assert pair(delta(point), phi) == pytest.approx(phi(point), rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(st.floats(min_value=-1.5, max_value=1.5, allow_nan=False))
def test_primitive_jump_sits_at_the_atom(point):
    p = primitive(delta(point), L)
    assert p.breakpoints == (point,)
    assert p.oriented_jump(point, L) == 1.0
    assert p.oriented_jump(point, R) == 0.0


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(["gaussian", "wide-gaussian", "hermite-gaussian-2"]))
def test_regularized_delta_converges(name):
    phi = registry_fn(name)
    errs = [abs(RegularizedDelta(eps).pair(phi) - phi(0.0)) for eps in (2e-2, 1e-2)]
    # first-order kernel: halving eps roughly halves the error
    if errs[1] > 1e-12:
        assert errs[0] / errs[1] == pytest.approx(2.0, abs=0.6)
