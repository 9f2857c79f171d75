"""Half-open interval topology over the extended real line.

The package works with three interval vocabularies: the Left family built
from ``(a, b]`` pieces, the Right family built from ``[a, b)`` pieces, and
the standard two-sided one.  Endpoints live on the extended line, so
``math.inf`` is a legal bound; the two infinities act as a single glue
point for topological bookkeeping and never carry an atom.

An :class:`IntervalSet` is kept canonical (sorted, pairwise disjoint,
non-adjacent) at construction, which makes set algebra and measure
evaluation downstream a matter of walking pieces in order.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass

__all__ = [
    "Orientation",
    "Interval",
    "IntervalSet",
    "orient_closure",
]


class Orientation(enum.Enum):
    """Which one-sided topology an object lives in."""

    LEFT = "left"
    RIGHT = "right"
    STANDARD = "standard"

    @property
    def mirrored(self) -> "Orientation":
        if self is Orientation.LEFT:
            return Orientation.RIGHT
        if self is Orientation.RIGHT:
            return Orientation.LEFT
        return self

    @classmethod
    def parse(cls, text: str) -> "Orientation":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown orientation {text!r}") from None


@dataclass(frozen=True, order=True)
class Interval:
    """One interval piece with explicit endpoint inclusion flags."""

    lo: float
    hi: float
    lo_inc: bool
    hi_inc: bool

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise ValueError("interval endpoints must not be NaN")
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")
        if math.isinf(self.lo) and self.lo > 0:
            raise ValueError("lower endpoint cannot be +inf")
        if math.isinf(self.hi) and self.hi < 0:
            raise ValueError("upper endpoint cannot be -inf")

    # constructors ---------------------------------------------------------
    @classmethod
    def left_open(cls, lo: float, hi: float) -> "Interval":
        """(lo, hi], the Left-family generating shape."""
        return cls(lo, hi, False, True)

    @classmethod
    def right_open(cls, lo: float, hi: float) -> "Interval":
        """[lo, hi), the Right-family generating shape."""
        return cls(lo, hi, True, False)

    @classmethod
    def open(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, False, False)

    @classmethod
    def closed(cls, lo: float, hi: float) -> "Interval":
        return cls(lo, hi, True, True)

    @classmethod
    def point(cls, x: float) -> "Interval":
        return cls(x, x, True, True)

    # predicates -----------------------------------------------------------
    @property
    def is_empty(self) -> bool:
        return self.lo == self.hi and not (self.lo_inc and self.hi_inc)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi and self.lo_inc and self.hi_inc

    @property
    def is_bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    def __contains__(self, x: float) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and not self.lo_inc:
            return False
        if x == self.hi and not self.hi_inc:
            return False
        return True

    def __str__(self):
        lo = "(" if not self.lo_inc else "["
        hi = ")" if not self.hi_inc else "]"
        return f"{lo}{_fmt(self.lo)},{_fmt(self.hi)}{hi}"

    # parsing / serialization ----------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "Interval":
        """Parse notation like ``(0,1]``, ``[-inf,0)`` or ``{2}``."""
        t = text.strip().replace(" ", "")
        if t.startswith("{") and t.endswith("}"):
            return cls.point(float(t[1:-1]))
        if len(t) < 5 or t[0] not in "([" or t[-1] not in ")]":
            raise ValueError(f"cannot parse interval {text!r}")
        lo_inc = t[0] == "["
        hi_inc = t[-1] == "]"
        body = t[1:-1].split(",")
        if len(body) != 2:
            raise ValueError(f"cannot parse interval {text!r}")
        return cls(_parse_endpoint(body[0]), _parse_endpoint(body[1]), lo_inc, hi_inc)


def _fmt(x: float) -> str:
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return repr(x)


def _parse_endpoint(s):
    s = s.strip().lower()
    if s in ("-inf", "-infinity"):
        return -math.inf
    if s in ("inf", "+inf", "infinity", "+infinity"):
        return math.inf
    return float(s)


def _endpoint_to_json(x: float):
    if x == math.inf:
        return "+inf"
    if x == -math.inf:
        return "-inf"
    return x


def _endpoint_from_json(v):
    if isinstance(v, str):
        return _parse_endpoint(v)
    return float(v)


class IntervalSet:
    """A canonical finite union of intervals.

    Canonical form: empty pieces dropped, pieces sorted by lower endpoint,
    overlapping or flush-adjacent pieces merged with inclusive-wins
    endpoint flags.  ``(0,1] | (1,2]`` merges to ``(0,2]`` while
    ``(0,1) | (1,2)`` stays two pieces because the junction point belongs
    to neither side.
    """

    __slots__ = ("pieces",)

    def __init__(self, pieces=()):
        if isinstance(pieces, Interval):
            pieces = (pieces,)
        self.pieces: tuple[Interval, ...] = _canonicalize(pieces)

    # set algebra ------------------------------------------------------------
    def __or__(self, other: "IntervalSet") -> "IntervalSet":
        return IntervalSet(self.pieces + other.pieces)

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return self | other

    def __contains__(self, x: float) -> bool:
        return any(x in p for p in self.pieces)

    def __eq__(self, other) -> bool:
        return isinstance(other, IntervalSet) and self.pieces == other.pieces

    def __hash__(self):
        return hash(self.pieces)

    def __bool__(self):
        return bool(self.pieces)

    def __iter__(self):
        return iter(self.pieces)

    def __len__(self):
        return len(self.pieces)

    def __str__(self):
        if not self.pieces:
            return "{}"
        return " u ".join(str(p) for p in self.pieces)

    def __repr__(self):
        return f"IntervalSet({list(map(str, self.pieces))})"

    @property
    def is_bounded(self) -> bool:
        return all(p.is_bounded for p in self.pieces)

    @property
    def span(self) -> Interval:
        if not self.pieces:
            raise ValueError("empty interval set has no span")
        first, last = self.pieces[0], self.pieces[-1]
        return Interval(first.lo, last.hi, first.lo_inc, last.hi_inc)

    # serialization ------------------------------------------------------------
    def to_json(self) -> str:
        return json.dumps(
            {
                "pieces": [
                    {
                        "lo": _endpoint_to_json(p.lo),
                        "hi": _endpoint_to_json(p.hi),
                        "lo_inc": p.lo_inc,
                        "hi_inc": p.hi_inc,
                    }
                    for p in self.pieces
                ]
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "IntervalSet":
        data = json.loads(text)
        pieces = [
            Interval(
                _endpoint_from_json(d["lo"]),
                _endpoint_from_json(d["hi"]),
                bool(d["lo_inc"]),
                bool(d["hi_inc"]),
            )
            for d in data["pieces"]
        ]
        return cls(pieces)

    @classmethod
    def parse(cls, text: str) -> "IntervalSet":
        """Parse ``(0,1] u [2,3)`` style notation (also accepts ``|``)."""
        parts = text.replace("|", " u ").split(" u ")
        return cls([Interval.parse(p) for p in parts if p.strip()])


def _canonicalize(pieces) -> tuple[Interval, ...]:
    live = sorted(
        (p for p in pieces if not p.is_empty),
        key=lambda p: (p.lo, not p.lo_inc, p.hi),
    )
    out: list[Interval] = []
    for p in live:
        if not out:
            out.append(p)
            continue
        last = out[-1]
        touches = p.lo < last.hi or (p.lo == last.hi and (last.hi_inc or p.lo_inc))
        if not touches:
            out.append(p)
            continue
        # merge, inclusive-wins on shared endpoints
        lo, lo_inc = last.lo, last.lo_inc
        if p.lo == last.lo:
            lo_inc = last.lo_inc or p.lo_inc
        if p.hi > last.hi:
            hi, hi_inc = p.hi, p.hi_inc
        elif p.hi == last.hi:
            hi, hi_inc = last.hi, last.hi_inc or p.hi_inc
        else:
            hi, hi_inc = last.hi, last.hi_inc
        out[-1] = Interval(lo, hi, lo_inc, hi_inc)
    return tuple(out)


def orient_closure(s: IntervalSet, o: Orientation) -> IntervalSet:
    """Reshape every non-degenerate piece into o's half-open form.

    Left maps each piece to ``(lo, hi]``, Right to ``[lo, hi)``; the
    standard orientation returns the set unchanged.  Degenerate point
    pieces are kept as explicit atoms (they are Lebesgue-null, and all
    three measure families agree on them).  The symmetric difference
    against the input is a finite set of endpoints.
    """
    if o is Orientation.STANDARD:
        return s
    out = []
    for p in s.pieces:
        if p.is_point:
            out.append(p)
        elif o is Orientation.LEFT:
            out.append(Interval(p.lo, p.hi, False, True))
        else:
            out.append(Interval(p.lo, p.hi, True, False))
    return IntervalSet(out)
