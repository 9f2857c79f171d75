"""One-sided Lebesgue-Stieltjes measures, pairings, variation, and norms.

The Left and Right measure families evaluate a distribution function with
endpoint-inclusion awareness: an included endpoint contributes the
function's assigned value there, an excluded endpoint contributes the
one-sided limit taken from inside the piece.  That single rule makes a
left-semicontinuous step invisible to its own half-open intervals (the
jump sits just past the excluded endpoint) while the closed-interval
reading still sees it, and it is deliberately only finitely additive
piece by piece: splitting ``(-1, 1]`` at the healed jump point of a
left-continuous step loses the jump, by design and not by accident.

The pairing of a piecewise function against the derivative of a test
function partitions the line into the orientation's generating pieces and
integrates by parts on each piece, taking assigned values at included
endpoints and interior limits at excluded ones.  This is the mechanism
that makes the one-sided sign functions pair to ``-2 phi(0)`` under their
matching orientation and to ``0`` under the mirrored one.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from . import quadrature
from .intervals import Interval, IntervalSet, Orientation, orient_closure
from .piecewise import PiecewiseFn
from .smooth import SmoothFunc, identity

__all__ = [
    "MeasureKind",
    "Measure",
    "TopologyMismatchError",
    "measure_of",
    "total_variation",
    "integrate",
    "pair_against_test_derivative",
    "norms",
    "NormRecord",
    "oriented_jump_masses",
]

class TopologyMismatchError(ValueError):
    """An interval set is incompatible with a measure's topology."""


class MeasureKind(enum.Enum):
    LEBESGUE = "lebesgue"
    STIELTJES_LEFT = "stieltjes-left"
    STIELTJES_RIGHT = "stieltjes-right"

    @property
    def orientation(self) -> Orientation:
        if self is MeasureKind.STIELTJES_LEFT:
            return Orientation.LEFT
        if self is MeasureKind.STIELTJES_RIGHT:
            return Orientation.RIGHT
        return Orientation.STANDARD


@dataclass(frozen=True)
class Measure:
    """A measure given by a distribution function plus explicit point atoms.

    For the Stieltjes kinds the distribution function must be
    semicontinuous in the matching direction; it is normalized at
    construction so its value at the origin is zero (a constant shift,
    which leaves every increment unchanged).
    """

    kind: MeasureKind
    distribution: PiecewiseFn
    atoms: tuple[tuple[float, float], ...] = ()

    @classmethod
    def lebesgue(cls) -> "Measure":
        return cls(MeasureKind.LEBESGUE, PiecewiseFn((), (identity(),), ()))

    @classmethod
    def from_distribution(cls, f: PiecewiseFn, o: Orientation) -> "Measure":
        if o is Orientation.STANDARD:
            kind = MeasureKind.LEBESGUE
        else:
            kind = (
                MeasureKind.STIELTJES_LEFT
                if o is Orientation.LEFT
                else MeasureKind.STIELTJES_RIGHT
            )
            if not f.is_semicontinuous(o):
                raise TopologyMismatchError(
                    f"distribution function is not {o.value}-semicontinuous"
                )
        shift = f.value_or_limit(0.0, o)
        if shift != 0.0:
            f = f + PiecewiseFn((), (_const(-shift),), ())
        return cls(kind, f)

    @classmethod
    def dirac(cls, point: float, weight: float = 1.0) -> "Measure":
        return cls(
            MeasureKind.LEBESGUE,
            PiecewiseFn((), (_const(0.0),), ()),
            ((float(point), float(weight)),),
        )

    def with_atom(self, point: float, weight: float) -> "Measure":
        return Measure(
            self.kind, self.distribution, self.atoms + ((float(point), float(weight)),)
        )


def _const(c):
    from .smooth import const

    return const(c)


# ---------------------------------------------------------------------------
# endpoint evaluation


def _assigned_value(f: PiecewiseFn, x: float) -> float:
    """The value of f at x: assigned at breakpoints, else the piece value."""
    j = f.breakpoint_index(x)
    if j is None:
        return f.left_limit(x)
    v = f.values[j]
    if v is not None:
        return v
    left, right = f.left_limit(x), f.right_limit(x)
    if abs(left - right) <= 1e-12:
        return left
    raise ValueError(f"distribution function has no value at breakpoint {x}")


def _endpoint_value(f: PiecewiseFn, x: float, included: bool, is_upper: bool) -> float:
    """Distribution value at a piece endpoint, inclusion-aware.

    Included endpoints use the assigned value; excluded endpoints use the
    limit from inside the piece.  At an infinite endpoint the outer piece
    must flatten out (constant tail) for the limit to exist.
    """
    if math.isinf(x):
        piece = f.pieces[-1] if x > 0 else f.pieces[0]
        if piece.kind == "const":
            return piece.params[0]
        raise ValueError("measure over an unbounded piece needs a constant-tail distribution")
    if included:
        return _assigned_value(f, x)
    return f.left_limit(x) if is_upper else f.right_limit(x)


def _oriented_pieces(m: Measure, s: IntervalSet) -> IntervalSet:
    oriented = orient_closure(s, m.kind.orientation)
    if m.kind is not MeasureKind.LEBESGUE:
        want_lo = m.kind is MeasureKind.STIELTJES_RIGHT
        for p in oriented.pieces:
            if p.is_point:
                continue
            if p.lo_inc != want_lo or p.hi_inc == want_lo:
                raise TopologyMismatchError(
                    f"piece {p} is incompatible with {m.kind.value} after closure"
                )
    return oriented


def measure_of(m: Measure, s: IntervalSet) -> float:
    """Total measure of s, evaluated piece by piece.

    Each piece contributes the inclusion-aware increment of the
    distribution function across it, plus any explicit atoms it contains.
    """
    if isinstance(s, Interval):
        s = IntervalSet(s)
    oriented = _oriented_pieces(m, s)
    total = 0.0
    for p in oriented.pieces:
        hi = _endpoint_value(m.distribution, p.hi, p.hi_inc, is_upper=True)
        lo = _endpoint_value(m.distribution, p.lo, p.lo_inc, is_upper=False)
        total += hi - lo
    for point, weight in m.atoms:
        if point in oriented:
            total += weight
    return total


# ---------------------------------------------------------------------------
# variation


def _smooth_variation(piece: SmoothFunc, lo: float, hi: float) -> float:
    """Exact variation of a smooth piece over [lo, hi] via its stationary points."""
    if hi <= lo:
        return 0.0
    nodes = [lo] + piece.critical_points(lo, hi) + [hi]
    return sum(abs(piece(nodes[i + 1]) - piece(nodes[i])) for i in range(len(nodes) - 1))


def _function_variation(
    f: PiecewiseFn, lo: float, hi: float, lo_inc: bool, hi_inc: bool
) -> float:
    """Variation of f over one interval piece, inclusion-aware at the edges.

    Interior breakpoints contribute both half-jumps around the assigned
    value; an included edge additionally contributes the half-jump between
    the assigned value and the interior limit.
    """
    if math.isinf(lo) or math.isinf(hi):
        raise ValueError("variation needs a bounded interval")
    interior = [b for b in f.breakpoints if lo < b < hi]
    total = 0.0
    nodes = [lo] + interior + [hi]
    for i in range(len(nodes) - 1):
        u, v = nodes[i], nodes[i + 1]
        piece = f._right_piece(u)
        total += _smooth_variation(piece, u, v)
    for b in interior:
        v = f.value_or_limit(b, Orientation.STANDARD)
        total += abs(v - f.left_limit(b)) + abs(f.right_limit(b) - v)
    if lo_inc and f.breakpoint_index(lo) is not None:
        total += abs(f.right_limit(lo) - _assigned_value(f, lo))
    if hi_inc and f.breakpoint_index(hi) is not None:
        total += abs(_assigned_value(f, hi) - f.left_limit(hi))
    return total


def total_variation(m: Measure, s: IntervalSet) -> float:
    """Total variation |mu|(s), exact for piecewise-monotone distributions."""
    if isinstance(s, Interval):
        s = IntervalSet(s)
    if not s.is_bounded:
        raise ValueError("total variation needs a bounded interval set")
    oriented = _oriented_pieces(m, s)
    total = 0.0
    for p in oriented.pieces:
        total += _function_variation(m.distribution, p.lo, p.hi, p.lo_inc, p.hi_inc)
    for point, weight in m.atoms:
        if point in oriented:
            total += abs(weight)
    return total


# ---------------------------------------------------------------------------
# integration against a measure


def _kind_side_value(f: PiecewiseFn, x: float, kind: MeasureKind) -> float:
    return f.value_or_limit(x, kind.orientation)


def integrate(f: PiecewiseFn, m: Measure, s: IntervalSet) -> float:
    """Integral of f against m over s.

    Smooth density parts go through adaptive quadrature; jumps of the
    distribution function and explicit atoms contribute the integrand
    evaluated per the measure kind's continuity side.  Which jumps a piece
    captures follows the same inclusion-aware endpoint evaluation as
    :func:`measure_of`, so the two agree on indicator integrands.
    """
    if isinstance(s, Interval):
        s = IntervalSet(s)
    oriented = _oriented_pieces(m, s)
    dist = m.distribution
    total = 0.0
    for p in oriented.pieces:
        if p.is_point:
            continue
        cuts = sorted(
            {b for b in dist.breakpoints if p.lo < b < p.hi}
            | {b for b in f.breakpoints if p.lo < b < p.hi}
        )
        edges = [p.lo] + cuts + [p.hi]
        for i in range(len(edges) - 1):
            u, v = edges[i], edges[i + 1]
            mid = _region_probe(u, v)
            fp = f._left_piece(mid)
            dp = dist._left_piece(mid)
            if dp.kind == "const":
                continue
            total += quadrature.improper(lambda x, fp=fp, dp=dp: fp(x) * dp.df(x), u, v)
        for c in cuts:
            if c in dist.breakpoints:
                w = dist.right_limit(c) - dist.left_limit(c)
                if w != 0.0:
                    total += w * _kind_side_value(f, c, m.kind)
        if p.lo_inc and not math.isinf(p.lo) and dist.breakpoint_index(p.lo) is not None:
            w = dist.right_limit(p.lo) - _assigned_value(dist, p.lo)
            if w != 0.0:
                total += w * _kind_side_value(f, p.lo, m.kind)
        if p.hi_inc and not math.isinf(p.hi) and dist.breakpoint_index(p.hi) is not None:
            w = _assigned_value(dist, p.hi) - dist.left_limit(p.hi)
            if w != 0.0:
                total += w * _kind_side_value(f, p.hi, m.kind)
    for point, weight in m.atoms:
        if point in oriented:
            total += weight * _kind_side_value(f, point, m.kind)
    return total


def _region_probe(u: float, v: float) -> float:
    if math.isinf(u) and math.isinf(v):
        return 0.0
    if math.isinf(u):
        return v - 1.0
    if math.isinf(v):
        return u + 1.0
    return 0.5 * (u + v)


# ---------------------------------------------------------------------------
# the pairing engine


def pair_against_test_derivative(
    f: PiecewiseFn, phi: SmoothFunc, o: Orientation
) -> float:
    """Evaluate the pairing of f against phi' under orientation o.

    The extended line is partitioned at f's breakpoints into o's
    generating pieces (LEFT: half-open above, RIGHT: half-open below,
    STANDARD: two-sided limits at every cut).  On each piece, integration
    by parts contributes ``f*phi`` at the boundary, where f is read as the
    assigned value at an included endpoint and as the interior one-sided
    limit at an excluded one, minus the integral of ``f' * phi`` across
    the piece.  Boundary terms at infinity vanish because phi decays.
    """
    if not quadrature.decays(phi):
        raise ValueError("test function must decay at infinity")
    bp = f.breakpoints
    edges = [-math.inf] + list(bp) + [math.inf]
    total = 0.0
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        piece = f.pieces[i]
        if not math.isinf(hi):
            if o is Orientation.LEFT:
                f_hi = f.value_or_limit(hi, Orientation.LEFT)
            else:
                f_hi = f.left_limit(hi)
            total += f_hi * phi(hi)
        if not math.isinf(lo):
            if o is Orientation.RIGHT:
                f_lo = f.value_or_limit(lo, Orientation.RIGHT)
            else:
                f_lo = f.right_limit(lo)
            total -= f_lo * phi(lo)
        if piece.kind != "const":
            total -= quadrature.improper(lambda x: piece.df(x) * phi(x), lo, hi)
    return total


def oriented_jump_masses(f: PiecewiseFn, o: Orientation) -> list[tuple[float, float]]:
    """The jump mass each breakpoint carries under orientation o's reading.

    A left-semicontinuous jump reads as zero mass under RIGHT and as the
    full jump under LEFT (and mirrored), which is the quotient-class
    orthogonality between the two one-sided measure families.
    """
    return [(b, f.oriented_jump(b, o)) for b in f.breakpoints]


# ---------------------------------------------------------------------------
# norms


@dataclass(frozen=True)
class NormRecord:
    sup: float
    bv: float
    lp: dict[float, float]

    def to_dict(self) -> dict:
        d = {"sup": self.sup, "bv": self.bv}
        for p, v in sorted(self.lp.items()):
            key = f"l{int(p)}" if float(p).is_integer() else f"l{p}"
            d[key] = v
        return d


def norms(f: PiecewiseFn, s: IntervalSet, ps=(1.0, 2.0)) -> NormRecord:
    """Supremum, p-th power, and bounded-variation norms of f over s.

    The BV norm is the edge value plus the variation over the closed span
    of each piece, edge jumps included, summed across pieces.  On a
    unit-measure interval this dominates the supremum norm, which in turn
    dominates every p-norm; that chain is the design target here.
    """
    if isinstance(s, Interval):
        s = IntervalSet(s)
    if not s.is_bounded:
        raise ValueError("norms need a bounded interval set")
    if not s.pieces:
        return NormRecord(0.0, 0.0, {float(p): 0.0 for p in ps})

    sup = 0.0
    bv = 0.0
    power = {float(p): 0.0 for p in ps}
    for piece in s.pieces:
        lo, hi = piece.lo, piece.hi
        if piece.is_point:
            v = abs(f.value_or_limit(lo, Orientation.STANDARD))
            sup = max(sup, v)
            bv += v
            continue
        cuts = [b for b in f.breakpoints if lo < b < hi]
        edges = [lo] + cuts + [hi]
        for i in range(len(edges) - 1):
            u, v = edges[i], edges[i + 1]
            sf = f._right_piece(u)
            candidates = [u, v] + sf.critical_points(u, v)
            sup = max(sup, max(abs(sf(x)) for x in candidates))
            for p in power:
                power[p] += quadrature.finite(lambda x, sf=sf, p=p: abs(sf(x)) ** p, u, v)
        for b in cuts:
            j = f.breakpoint_index(b)
            if j is not None and f.values[j] is not None:
                sup = max(sup, abs(f.values[j]))
        for b, inc in ((lo, piece.lo_inc), (hi, piece.hi_inc)):
            if inc and f.breakpoint_index(b) is not None:
                sup = max(sup, abs(f.value_or_limit(b, Orientation.STANDARD)))
        edge = f.value_or_limit(lo, Orientation.RIGHT)
        bv += abs(edge) + _function_variation(f, lo, hi, True, True)
    return NormRecord(sup, bv, {p: power[p] ** (1.0 / p) for p in power})
