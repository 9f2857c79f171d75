"""Piecewise-smooth functions with explicitly assigned breakpoint values.

The value a function takes exactly at a jump is first-class data here, not
an afterthought: the one-sided Heaviside variants differ only in that
value, and everything downstream (classification, one-sided measures,
pairings, Euler bookkeeping) keys off it.  A breakpoint may also carry no
value at all (``None``), which models the classical two-sided objects that
are deliberately left unassigned at the jump.

Pieces are :class:`~semiflux.smooth.SmoothFunc` callables, one per open
region between consecutive breakpoints, including the two unbounded outer
regions.  Each piece must extend continuously to its closed region; the
constructor runs a few shrinking-offset probes near every breakpoint to
catch accidentally discontinuous piece callables early.
"""

from __future__ import annotations

import bisect
import enum
import json
import math
from dataclasses import dataclass

from .intervals import Interval, IntervalSet, Orientation
from .smooth import SmoothFunc, const, from_spec as smooth_from_spec

__all__ = [
    "Continuity",
    "PiecewiseFn",
    "heaviside",
    "heaviside_two_sided",
    "sgn",
    "sgn_two_sided",
    "balanced_sgn",
    "indicator",
    "NAMED_FUNCTIONS",
    "named_function",
]

_PROBE_TOL = 1e-9


class Continuity(enum.Enum):
    """Classification of a point per the one-sided topologies."""

    CONTINUOUS = "continuous"
    LEFT_SEMICONTINUOUS = "left-semicontinuous"
    RIGHT_SEMICONTINUOUS = "right-semicontinuous"
    COMPLETELY_DISCONTINUOUS = "completely-discontinuous"


@dataclass(frozen=True)
class PiecewiseFn:
    """A function that is smooth between breakpoints.

    Attributes
    ----------
    breakpoints:
        Strictly increasing finite abscissas.
    pieces:
        ``len(breakpoints) + 1`` smooth functions; piece ``i`` governs the
        open region between breakpoint ``i-1`` and breakpoint ``i`` (with
        the obvious unbounded outer regions).
    values:
        The assigned value at each breakpoint, or ``None`` when the
        function is deliberately unassigned there.
    hint:
        The orientation this function was built for.  Purely advisory;
        operations that need an orientation take one explicitly.
    """

    breakpoints: tuple[float, ...]
    pieces: tuple[SmoothFunc, ...]
    values: tuple[float | None, ...]
    hint: Orientation = Orientation.STANDARD

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(float(b) for b in self.breakpoints))
        object.__setattr__(self, "pieces", tuple(self.pieces))
        object.__setattr__(
            self, "values", tuple(None if v is None else float(v) for v in self.values)
        )
        bp = self.breakpoints
        if any(not math.isfinite(b) for b in bp):
            raise ValueError("breakpoints must be finite")
        if any(bp[i] >= bp[i + 1] for i in range(len(bp) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        if len(self.pieces) != len(bp) + 1:
            raise ValueError("need exactly one piece per region between breakpoints")
        if len(self.values) != len(bp):
            raise ValueError("need exactly one value slot per breakpoint")
        self._probe_piece_continuity()

    def _probe_piece_continuity(self):
        """Sanity-check that each piece extends continuously to its breakpoints."""
        bp = self.breakpoints
        for j, b in enumerate(bp):
            for piece, sign, neighbor in (
                (self.pieces[j], -1.0, bp[j - 1] if j > 0 else None),
                (self.pieces[j + 1], +1.0, bp[j + 1] if j + 1 < len(bp) else None),
            ):
                at_b = piece(b)
                if not math.isfinite(at_b):
                    raise ValueError(f"piece limit at breakpoint {b} is not finite")
                h0 = 0.1 if neighbor is None else min(0.1, abs(neighbor - b) / 4.0)
                errs = [abs(piece(b + sign * h0 * 0.5**k) - at_b) for k in range(8)]
                if errs[-1] > _PROBE_TOL and errs[-1] > 0.6 * errs[3]:
                    raise ValueError(
                        f"piece does not extend continuously to breakpoint {b}"
                    )

    # --- lookup -------------------------------------------------------------

    def _left_piece(self, x: float) -> SmoothFunc:
        return self.pieces[bisect.bisect_left(self.breakpoints, x)]

    def _right_piece(self, x: float) -> SmoothFunc:
        return self.pieces[bisect.bisect_right(self.breakpoints, x)]

    def breakpoint_index(self, x: float) -> int | None:
        i = bisect.bisect_left(self.breakpoints, x)
        if i < len(self.breakpoints) and self.breakpoints[i] == x:
            return i
        return None

    def __call__(self, x: float) -> float:
        """Evaluate at x, honoring assigned breakpoint values.

        Raises ValueError at a breakpoint that carries no assigned value;
        use :meth:`left_limit` / :meth:`right_limit` for those.
        """
        j = self.breakpoint_index(x)
        if j is None:
            return self._left_piece(x)(x)
        v = self.values[j]
        if v is None:
            raise ValueError(f"no assigned value at breakpoint {x}")
        return v

    def left_limit(self, x: float) -> float:
        return self._left_piece(x)(x)

    def right_limit(self, x: float) -> float:
        return self._right_piece(x)(x)

    def value_or_limit(self, x: float, side: Orientation) -> float:
        """Assigned value if x carries one, else the one-sided limit.

        ``side`` says which limit stands in at an unassigned breakpoint:
        LEFT takes the limit from below, RIGHT from above, STANDARD the
        average of the two (the principal value convention).
        """
        j = self.breakpoint_index(x)
        if j is not None and self.values[j] is not None:
            return self.values[j]
        if side is Orientation.LEFT:
            return self.left_limit(x)
        if side is Orientation.RIGHT:
            return self.right_limit(x)
        return 0.5 * (self.left_limit(x) + self.right_limit(x))

    def sample(self, xs) -> list[float]:
        """Evaluate on a grid, falling back to the hint's side at unassigned points."""
        return [self.value_or_limit(float(x), self.hint) for x in xs]

    # --- structure ----------------------------------------------------------

    def regions(self) -> list[tuple[float, float, SmoothFunc]]:
        """Open regions (lo, hi) with their governing piece, in order."""
        edges = (-math.inf,) + self.breakpoints + (math.inf,)
        return [(edges[i], edges[i + 1], self.pieces[i]) for i in range(len(self.pieces))]

    def classify(self, x: float, tol: float = _PROBE_TOL) -> Continuity:
        left, right = self.left_limit(x), self.right_limit(x)
        j = self.breakpoint_index(x)
        v = self.values[j] if j is not None else None
        if v is None:
            if abs(left - right) <= tol:
                return Continuity.CONTINUOUS
            return Continuity.COMPLETELY_DISCONTINUOUS
        matches_left = abs(v - left) <= tol
        matches_right = abs(v - right) <= tol
        if matches_left and matches_right:
            return Continuity.CONTINUOUS
        if matches_left:
            return Continuity.LEFT_SEMICONTINUOUS
        if matches_right:
            return Continuity.RIGHT_SEMICONTINUOUS
        return Continuity.COMPLETELY_DISCONTINUOUS

    def is_semicontinuous(self, o: Orientation, tol: float = _PROBE_TOL) -> bool:
        """True when every breakpoint classifies as continuous or o-sided."""
        wanted = {
            Orientation.LEFT: Continuity.LEFT_SEMICONTINUOUS,
            Orientation.RIGHT: Continuity.RIGHT_SEMICONTINUOUS,
        }.get(o)
        for b in self.breakpoints:
            c = self.classify(b, tol)
            if c is Continuity.CONTINUOUS or c is wanted:
                continue
            return False
        return True

    def oriented_jump(self, b: float, o: Orientation) -> float:
        """The jump mass at b as seen by orientation o's pairing.

        Under LEFT the generating pieces are ``(.., b]`` then ``(b, ..]``,
        so the visible mismatch is between the assigned value and the
        limit from above; under RIGHT it is the mirror; STANDARD sees the
        full two-sided jump and ignores the assigned value.  Left- (resp.
        right-) semicontinuous jumps are invisible to the RIGHT (resp.
        LEFT) reading, which is the mechanism behind the one-sided
        pairing table and the measure orthogonality.
        """
        if o is Orientation.LEFT:
            return self.right_limit(b) - self.value_or_limit(b, Orientation.LEFT)
        if o is Orientation.RIGHT:
            return self.value_or_limit(b, Orientation.RIGHT) - self.left_limit(b)
        return self.right_limit(b) - self.left_limit(b)

    def jumps(self, tol: float = 1e-12) -> list[tuple[float, float]]:
        """Breakpoints with a genuine two-sided jump, as (point, jump) pairs."""
        out = []
        for b in self.breakpoints:
            j = self.right_limit(b) - self.left_limit(b)
            if abs(j) > tol:
                out.append((b, j))
        return out

    # --- transforms -----------------------------------------------------------

    def reflect(self) -> "PiecewiseFn":
        """The function x -> f(-x)."""
        return PiecewiseFn(
            breakpoints=tuple(-b for b in reversed(self.breakpoints)),
            pieces=tuple(p.reflected() for p in reversed(self.pieces)),
            values=tuple(reversed(self.values)),
            hint=self.hint.mirrored,
        )

    def extend(self, o: Orientation) -> "PiecewiseFn":
        """Reassign every breakpoint value to the o-side limit.

        The result is o-semicontinuous everywhere; it differs from the
        input only on the (Lebesgue-null) set of breakpoints.
        """
        if o is Orientation.STANDARD:
            raise ValueError("extend needs a one-sided orientation")
        limit = self.left_limit if o is Orientation.LEFT else self.right_limit
        return PiecewiseFn(
            breakpoints=self.breakpoints,
            pieces=self.pieces,
            values=tuple(limit(b) for b in self.breakpoints),
            hint=o,
        )

    def with_value(self, b: float, v: float | None) -> "PiecewiseFn":
        j = self.breakpoint_index(b)
        if j is None:
            raise ValueError(f"{b} is not a breakpoint")
        vals = list(self.values)
        vals[j] = v
        return PiecewiseFn(self.breakpoints, self.pieces, tuple(vals), self.hint)

    def scaled(self, s: float) -> "PiecewiseFn":
        return PiecewiseFn(
            self.breakpoints,
            tuple(p.scaled(s) for p in self.pieces),
            tuple(None if v is None else s * v for v in self.values),
            self.hint,
        )

    def __neg__(self) -> "PiecewiseFn":
        return self.scaled(-1.0)

    def __add__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return _combine(self, other, lambda a, b: a + b, lambda a, b: a + b)

    def __sub__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return self + (-other)

    def __mul__(self, other: "PiecewiseFn") -> "PiecewiseFn":
        return _combine(self, other, lambda a, b: a * b, lambda a, b: a * b)

    # --- serialization ----------------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "breakpoints": list(self.breakpoints),
                "pieces": [p.to_spec() for p in self.pieces],
                "values": list(self.values),
                "orientation": self.hint.value,
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "PiecewiseFn":
        d = json.loads(text)
        return cls(
            breakpoints=tuple(d["breakpoints"]),
            pieces=tuple(smooth_from_spec(s) for s in d["pieces"]),
            values=tuple(d["values"]),
            hint=Orientation(d.get("orientation", "standard")),
        )


def _combine(f: PiecewiseFn, g: PiecewiseFn, piece_op, value_op) -> PiecewiseFn:
    merged = sorted(set(f.breakpoints) | set(g.breakpoints))

    def piece_at(fn: PiecewiseFn, lo: float, hi: float) -> SmoothFunc:
        if math.isinf(lo) and math.isinf(hi):
            mid = 0.0
        elif math.isinf(lo):
            mid = hi - 1.0
        elif math.isinf(hi):
            mid = lo + 1.0
        else:
            mid = 0.5 * (lo + hi)
        return fn._left_piece(mid)

    def known_value(fn: PiecewiseFn, b: float) -> float | None:
        j = fn.breakpoint_index(b)
        if j is None:
            return fn.left_limit(b)
        return fn.values[j]

    edges = [-math.inf] + merged + [math.inf]
    pieces = tuple(
        piece_op(piece_at(f, edges[i], edges[i + 1]), piece_at(g, edges[i], edges[i + 1]))
        for i in range(len(edges) - 1)
    )
    values = []
    for b in merged:
        fv, gv = known_value(f, b), known_value(g, b)
        values.append(None if fv is None or gv is None else value_op(fv, gv))
    hint = f.hint if f.hint is g.hint else Orientation.STANDARD
    return PiecewiseFn(tuple(merged), pieces, tuple(values), hint)


# ---------------------------------------------------------------------------
# canonical constructors


def heaviside(o: Orientation) -> PiecewiseFn:
    """The unit step with the one-sided value convention at zero.

    LEFT assigns 0 at the origin (continuous from below), RIGHT assigns 1
    (continuous from above).
    """
    if o is Orientation.LEFT:
        v = 0.0
    elif o is Orientation.RIGHT:
        v = 1.0
    else:
        raise ValueError("heaviside needs a one-sided orientation; see heaviside_two_sided")
    return PiecewiseFn((0.0,), (const(0.0), const(1.0)), (v,), o)


def heaviside_two_sided() -> PiecewiseFn:
    """The classical step, unassigned at the origin."""
    return PiecewiseFn((0.0,), (const(0.0), const(1.0)), (None,), Orientation.STANDARD)


def sgn(o: Orientation) -> PiecewiseFn:
    """The sign function with sgn(0) = -1 (LEFT) or +1 (RIGHT)."""
    if o is Orientation.LEFT:
        v = -1.0
    elif o is Orientation.RIGHT:
        v = 1.0
    else:
        raise ValueError("sgn needs a one-sided orientation; see sgn_two_sided")
    return PiecewiseFn((0.0,), (const(-1.0), const(1.0)), (v,), o)


def sgn_two_sided() -> PiecewiseFn:
    """The classical sign, unassigned at the origin."""
    return PiecewiseFn((0.0,), (const(-1.0), const(1.0)), (None,), Orientation.STANDARD)


def balanced_sgn(o: Orientation) -> PiecewiseFn:
    """The sign variant that takes the value 0 at the origin.

    Equals ``heaviside(o) - heaviside(o).reflect()`` pointwise, including
    at zero, where the two step values cancel exactly.
    """
    if o is Orientation.STANDARD:
        raise ValueError("balanced_sgn needs a one-sided orientation")
    return PiecewiseFn((0.0,), (const(-1.0), const(1.0)), (0.0,), o)


def indicator(iv: Interval, assigned: bool = True) -> PiecewiseFn:
    """Characteristic function of one interval.

    With ``assigned=False`` the endpoint values are left unassigned, the
    classical convention for a set whose boundary is deliberately vague.
    """
    if not iv.is_bounded:
        raise ValueError("indicator needs a bounded interval")
    if iv.is_empty:
        return PiecewiseFn((), (const(0.0),), ())
    if iv.is_point:
        return PiecewiseFn((iv.lo,), (const(0.0), const(0.0)), (1.0 if assigned else None,))
    values = (
        (1.0 if iv.lo_inc else 0.0, 1.0 if iv.hi_inc else 0.0) if assigned else (None, None)
    )
    return PiecewiseFn(
        (iv.lo, iv.hi), (const(0.0), const(1.0), const(0.0)), values
    )


NAMED_FUNCTIONS = {
    "H_L": lambda: heaviside(Orientation.LEFT),
    "H_R": lambda: heaviside(Orientation.RIGHT),
    "H_twosided": heaviside_two_sided,
    "sgn_L": lambda: sgn(Orientation.LEFT),
    "sgn_R": lambda: sgn(Orientation.RIGHT),
    "sgn_twosided": sgn_two_sided,
    "sgn_balanced_L": lambda: balanced_sgn(Orientation.LEFT),
    "sgn_balanced_R": lambda: balanced_sgn(Orientation.RIGHT),
    "box": lambda: indicator(Interval.left_open(0.0, 1.0)),
}


def named_function(name: str) -> PiecewiseFn:
    """Look up one of the canonical step functions by CLI name."""
    try:
        return NAMED_FUNCTIONS[name]()
    except KeyError:
        raise ValueError(
            f"unknown function {name!r}; choose from {', '.join(sorted(NAMED_FUNCTIONS))}"
        ) from None
