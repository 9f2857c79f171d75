"""Finite-order distributions, their primitives, and graph bookkeeping.

Only atoms of order zero (point masses) and one (dipoles) are supported;
that covers every identity the package needs.  Atom weights for the
derivative of a piecewise function always come from the two-sided limits,
so the derivative of either one-sided sign variant is the same ``2 delta``
object; orientation enters through the pairing engine and the component
counting instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import quadrature
from .intervals import Orientation
from .piecewise import Continuity, PiecewiseFn
from .smooth import SmoothFunc, const

__all__ = [
    "Distribution",
    "delta",
    "delta_prime",
    "distributional_derivative",
    "primitive",
    "RegularizedDelta",
    "regularized_pair",
    "euler_character",
]

_JUMP_TOL = 1e-12


@dataclass(frozen=True)
class Distribution:
    """A regular piecewise part plus finitely many point atoms.

    Atoms are (point, order, weight) triples with order 0 or 1.
    """

    regular: PiecewiseFn | None = None
    atoms: tuple[tuple[float, int, float], ...] = ()

    def __post_init__(self):
        for point, order, _ in self.atoms:
            if not math.isfinite(point):
                raise ValueError("atoms must sit at finite points")
            if order not in (0, 1):
                raise ValueError("only atom orders 0 and 1 are supported")

    def __add__(self, other: "Distribution") -> "Distribution":
        if self.regular is None:
            reg = other.regular
        elif other.regular is None:
            reg = self.regular
        else:
            reg = self.regular + other.regular
        return Distribution(reg, self.atoms + other.atoms)

    def scaled(self, s: float) -> "Distribution":
        return Distribution(
            None if self.regular is None else self.regular.scaled(s),
            tuple((p, k, s * w) for p, k, w in self.atoms),
        )

    @property
    def atom_total(self) -> float:
        """Total order-zero weight."""
        return sum(w for _, k, w in self.atoms if k == 0)


def delta(point: float = 0.0, weight: float = 1.0) -> Distribution:
    return Distribution(atoms=((float(point), 0, float(weight)),))


def delta_prime(point: float = 0.0, weight: float = 1.0) -> Distribution:
    return Distribution(atoms=((float(point), 1, float(weight)),))


def pair(d: Distribution, phi: SmoothFunc) -> float:
    """The action of d on a decaying test function.

    Order-one atoms act as ``-w * phi'(point)``; the regular part is
    integrated region by region with doubling tails.
    """
    if not quadrature.decays(phi):
        raise ValueError("test function must decay at infinity")
    total = 0.0
    for point, order, weight in d.atoms:
        total += weight * (phi(point) if order == 0 else -phi.df(point))
    if d.regular is not None:
        for lo, hi, piece in d.regular.regions():
            if piece.kind == "const" and piece.params[0] == 0.0:
                continue
            total += quadrature.improper(lambda x, p=piece: p(x) * phi(x), lo, hi)
    return total


def distributional_derivative(f: PiecewiseFn, o: Orientation) -> Distribution:
    """Derivative of f as a distribution.

    The regular part differentiates each piece; every genuine two-sided
    jump contributes an order-zero atom weighted by the full jump.  A
    breakpoint whose one-sided limits agree is a removable mismatch, not a
    jump: extending it away changes nothing here.  The orientation tags
    the regular part's hint only; atom weights are orientation-free.
    """
    regular = PiecewiseFn(
        breakpoints=f.breakpoints,
        pieces=tuple(p.derivative() for p in f.pieces),
        values=(None,) * len(f.breakpoints),
        hint=o,
    )
    atoms = tuple((b, 0, j) for b, j in f.jumps(_JUMP_TOL))
    return Distribution(regular, atoms)


def primitive(d: Distribution, o: Orientation, centered: bool = False) -> PiecewiseFn:
    """The oriented step-function primitive of a purely atomic d.

    Each order-zero atom of weight w becomes a ``w``-sized step at its
    point, with the breakpoint value picked by the orientation (LEFT
    continues from below, RIGHT from above).  With ``centered=True`` the
    midpoint value is used instead, which turns a unit delta into the
    half-sign primitive.
    """
    if o is Orientation.STANDARD:
        raise ValueError("primitive needs a one-sided orientation")
    if any(k != 0 for _, k, _ in d.atoms):
        raise ValueError("primitive needs atoms of order zero only")
    if d.regular is not None and any(
        not (p.kind == "const" and p.params[0] == 0.0) for p in d.regular.pieces
    ):
        raise ValueError("primitive supports purely atomic distributions")

    weights: dict[float, float] = {}
    for point, _, w in d.atoms:
        weights[point] = weights.get(point, 0.0) + w
    points = tuple(sorted(weights))
    running = 0.0
    levels = [0.0]
    values = []
    for b in points:
        w = weights[b]
        if centered:
            values.append(running + 0.5 * w)
        else:
            values.append(running if o is Orientation.LEFT else running + w)
        running += w
        levels.append(running)
    if centered:
        shift = -0.5 * running
        levels = [lv + shift for lv in levels]
        values = [v + shift for v in values]
    return PiecewiseFn(
        breakpoints=points,
        pieces=tuple(const(lv) for lv in levels),
        values=tuple(values),
        hint=o,
    )


# ---------------------------------------------------------------------------
# regularized delta family


@dataclass(frozen=True)
class RegularizedDelta:
    """The Cauchy kernel family, normalized to unit mass.

    The raw profile ``eps / (x**2 + eps**2)`` integrates to pi, so the
    kernel carries an explicit ``1/pi``; its primitive is then
    ``arctan(x/eps)/pi``, which runs from -1/2 to 1/2 like the half-sign.
    """

    epsilon: float

    def __post_init__(self):
        if self.epsilon <= 0.0:
            raise ValueError("epsilon must be positive")

    def kernel(self, x: float) -> float:
        e = self.epsilon
        return e / (math.pi * (x * x + e * e))

    def primitive(self, x: float) -> float:
        return math.atan2(x, self.epsilon) / math.pi

    def pair(self, phi: SmoothFunc) -> float:
        if not quadrature.decays(phi):
            raise ValueError("test function must decay at infinity")
        return quadrature.improper(lambda x: self.kernel(x) * phi(x), -math.inf, math.inf)


def regularized_pair(r: RegularizedDelta, phi: SmoothFunc) -> float:
    """Pair the mollified delta against phi; tends to phi(0) as eps -> 0."""
    return r.pair(phi)


# ---------------------------------------------------------------------------
# Euler character


def euler_character(f: PiecewiseFn, o: Orientation) -> int:
    """Components of the graph of f minus its jump atoms.

    Under a one-sided orientation the extended line closes into a circle
    (the two infinities are one glue point), so a graph with J genuine
    jumps falls into max(1, J) arcs; under the standard orientation the
    line stays an interval and the same jumps leave J + 1 arcs.  An
    assigned value matching neither limit is an isolated graph point and
    counts as its own component.  Jump atoms are counted from the
    two-sided limits, so a constant has character 1 while every
    semicontinuous step variant lands on 0 under its half-open topology.
    """
    jumps = 0
    isolated = 0
    for b in f.breakpoints:
        left, right = f.left_limit(b), f.right_limit(b)
        if abs(right - left) > _JUMP_TOL:
            jumps += 1
        c = f.classify(b)
        if c is Continuity.COMPLETELY_DISCONTINUOUS:
            j = f.breakpoint_index(b)
            if f.values[j] is not None:
                isolated += 1
    if o is Orientation.STANDARD:
        components = 1 + jumps + isolated
    else:
        components = max(1, jumps) + isolated
    return components - jumps
