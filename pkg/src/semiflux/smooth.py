"""Smooth scalar functions carried as value/derivative callable triples.

Pieces of a piecewise function, quadrature integrands, and test functions
all need first and second derivatives without finite-difference noise, so a
:class:`SmoothFunc` bundles ``f``, ``f'`` and ``f''`` as plain callables.
The registry kinds (``const``, ``poly``, ``gaussian``, ``exp``) round-trip
through JSON by name and parameters; combinations built with the algebra
below stay fully analytic but become anonymous.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numpy.polynomial import polynomial as npoly

__all__ = [
    "SmoothFunc",
    "const",
    "poly",
    "gaussian",
    "expfunc",
    "identity",
    "from_spec",
    "test_function",
    "TEST_FUNCTION_NAMES",
]


@dataclass(frozen=True)
class SmoothFunc:
    """A scalar function with analytic first and second derivatives.

    ``kind``/``params`` identify registry primitives for serialization;
    anonymous combinations carry ``kind=None`` and cannot be serialized.
    """

    f: Callable[[float], float]
    df: Callable[[float], float]
    d2f: Callable[[float], float]
    kind: str | None = None
    params: tuple[float, ...] = field(default=())

    def __call__(self, x):
        return self.f(x)

    def __add__(self, other: "SmoothFunc") -> "SmoothFunc":
        if self.kind == "const" and other.kind == "const":
            return const(self.params[0] + other.params[0])
        if self.kind == "poly" and other.kind == "poly":
            return poly(npoly.polyadd(self.params, other.params))
        if self.kind in ("const", "poly") and other.kind in ("const", "poly"):
            return poly(npoly.polyadd(_as_coeffs(self), _as_coeffs(other)))
        sf, of = self, other
        return SmoothFunc(
            f=lambda x: sf.f(x) + of.f(x),
            df=lambda x: sf.df(x) + of.df(x),
            d2f=lambda x: sf.d2f(x) + of.d2f(x),
        )

    def __mul__(self, other: "SmoothFunc") -> "SmoothFunc":
        if self.kind == "const":
            return other.scaled(self.params[0])
        if other.kind == "const":
            return self.scaled(other.params[0])
        if self.kind == "poly" and other.kind == "poly":
            return poly(npoly.polymul(self.params, other.params))
        sf, of = self, other
        return SmoothFunc(
            f=lambda x: sf.f(x) * of.f(x),
            df=lambda x: sf.df(x) * of.f(x) + sf.f(x) * of.df(x),
            d2f=lambda x: (
                sf.d2f(x) * of.f(x) + 2.0 * sf.df(x) * of.df(x) + sf.f(x) * of.d2f(x)
            ),
        )

    def __neg__(self) -> "SmoothFunc":
        return self.scaled(-1.0)

    def scaled(self, s: float) -> "SmoothFunc":
        if self.kind == "const":
            return const(s * self.params[0])
        if self.kind == "poly":
            return poly(tuple(s * c for c in self.params))
        if self.kind == "gaussian":
            amp, center, width = self.params
            return gaussian(s * amp, center, width)
        if self.kind == "exp":
            rate, amp = self.params
            return expfunc(rate, s * amp)
        sf = self
        return SmoothFunc(
            f=lambda x: s * sf.f(x),
            df=lambda x: s * sf.df(x),
            d2f=lambda x: s * sf.d2f(x),
        )

    def reflected(self) -> "SmoothFunc":
        """The function x -> f(-x), with derivatives adjusted."""
        if self.kind == "const":
            return self
        if self.kind == "poly":
            return poly(tuple(c * (-1.0) ** k for k, c in enumerate(self.params)))
        if self.kind == "gaussian":
            amp, center, width = self.params
            return gaussian(amp, -center, width)
        if self.kind == "exp":
            rate, amp = self.params
            return expfunc(-rate, amp)
        sf = self
        return SmoothFunc(
            f=lambda x: sf.f(-x),
            df=lambda x: -sf.df(-x),
            d2f=lambda x: sf.d2f(-x),
        )

    def derivative(self) -> "SmoothFunc":
        """The derivative as another SmoothFunc.

        Registry kinds stay analytic through second order.  Anonymous
        functions fall back to a central difference for the (rarely
        needed) third derivative.
        """
        if self.kind == "const":
            return const(0.0)
        if self.kind == "poly":
            c = npoly.polyder(self.params)
            return poly(c if len(c) else (0.0,))
        if self.kind == "gaussian":
            amp, center, width = self.params
            w2 = width * width
            lin = poly((2.0 * center / w2, -2.0 / w2))
            return lin * gaussian(amp, center, width)
        if self.kind == "exp":
            rate, amp = self.params
            return expfunc(rate, rate * amp)
        sf = self

        def d3f(x, _g=sf.d2f):
            h = 6.0e-6 * max(1.0, abs(x))
            return (_g(x + h) - _g(x - h)) / (2.0 * h)

        return SmoothFunc(f=sf.df, df=sf.d2f, d2f=d3f)

    def critical_points(self, lo: float, hi: float) -> list[float]:
        """Stationary points of f strictly inside (lo, hi), sorted.

        Registry kinds are solved analytically; anonymous callables are
        scanned on a sign-change grid and refined by bisection.  A wildly
        oscillating anonymous derivative raises ValueError since the
        variation machinery only supports piecewise-monotone pieces.
        """
        if self.kind in ("const", "exp"):
            return []
        if self.kind == "poly":
            dc = npoly.polyder(self.params)
            if len(dc) == 0 or not np.any(np.asarray(dc) != 0.0):
                return []
            roots = npoly.polyroots(dc)
            out = [
                float(r.real)
                for r in np.atleast_1d(roots)
                if abs(r.imag) < 1e-12 and lo < r.real < hi
            ]
            return sorted(set(out))
        if self.kind == "gaussian":
            center = self.params[1]
            return [center] if lo < center < hi else []
        return _scan_critical_points(self.df, lo, hi)

    def to_spec(self) -> dict:
        if self.kind is None:
            raise ValueError("anonymous smooth function cannot be serialized")
        return {"name": self.kind, "params": list(self.params)}


def _as_coeffs(sf: SmoothFunc) -> tuple[float, ...]:
    return sf.params if sf.kind == "poly" else (sf.params[0],)


def _scan_critical_points(df, lo, hi, samples=513, max_brackets=64):
    xs = np.linspace(lo, hi, samples)
    vals = np.array([df(x) for x in xs])
    sign = np.sign(vals)
    flips = np.nonzero(sign[:-1] * sign[1:] < 0)[0]
    if len(flips) > max_brackets:
        raise ValueError("derivative oscillates too much; piece is not piecewise-monotone")
    roots = []
    for i in flips:
        a, b = xs[i], xs[i + 1]
        fa = df(a)
        for _ in range(80):
            m = 0.5 * (a + b)
            fm = df(m)
            if fa * fm <= 0.0:
                b = m
            else:
                a, fa = m, fm
        roots.append(0.5 * (a + b))
    roots.extend(float(x) for x, v in zip(xs[1:-1], vals[1:-1]) if v == 0.0)
    return sorted(set(roots))


# ---------------------------------------------------------------------------
# registry primitives


def const(c: float) -> SmoothFunc:
    c = float(c)
    return SmoothFunc(
        f=lambda x: c,
        df=lambda x: 0.0,
        d2f=lambda x: 0.0,
        kind="const",
        params=(c,),
    )


def poly(coeffs) -> SmoothFunc:
    """Polynomial with coefficients in ascending order."""
    cs = tuple(float(c) for c in coeffs)
    if not cs:
        cs = (0.0,)
    d1 = npoly.polyder(cs)
    d2 = npoly.polyder(cs, 2)
    return SmoothFunc(
        f=lambda x: float(npoly.polyval(x, cs)),
        df=lambda x: float(npoly.polyval(x, d1)) if len(d1) else 0.0,
        d2f=lambda x: float(npoly.polyval(x, d2)) if len(d2) else 0.0,
        kind="poly",
        params=cs,
    )


def gaussian(amp: float = 1.0, center: float = 0.0, width: float = 1.0) -> SmoothFunc:
    """amp * exp(-((x - center)/width)**2)."""
    amp, center, width = float(amp), float(center), float(width)
    if width <= 0.0:
        raise ValueError("gaussian width must be positive")
    w2 = width * width

    def f(x):
        u = (x - center) / width
        return amp * math.exp(-u * u)

    def df(x):
        return f(x) * (-2.0 * (x - center) / w2)

    def d2f(x):
        u2 = ((x - center) / width) ** 2
        return f(x) * (4.0 * u2 - 2.0) / w2

    return SmoothFunc(f=f, df=df, d2f=d2f, kind="gaussian", params=(amp, center, width))


def expfunc(rate: float = 1.0, amp: float = 1.0) -> SmoothFunc:
    """amp * exp(rate * x)."""
    rate, amp = float(rate), float(amp)
    return SmoothFunc(
        f=lambda x: amp * math.exp(rate * x),
        df=lambda x: rate * amp * math.exp(rate * x),
        d2f=lambda x: rate * rate * amp * math.exp(rate * x),
        kind="exp",
        params=(rate, amp),
    )


def identity() -> SmoothFunc:
    return poly((0.0, 1.0))


_CONSTRUCTORS = {
    "const": lambda params: const(*params),
    "poly": lambda params: poly(params),
    "gaussian": lambda params: gaussian(*params),
    "exp": lambda params: expfunc(*params),
}


def from_spec(spec: dict) -> SmoothFunc:
    """Rebuild a registry SmoothFunc from its JSON form."""
    name = spec.get("name")
    if name not in _CONSTRUCTORS:
        raise ValueError(f"unknown smooth function name: {name!r}")
    return _CONSTRUCTORS[name](tuple(spec.get("params", ())))


# ---------------------------------------------------------------------------
# named test functions (Schwartz-class probes for pairings)


def _hermite_gaussian(k: int) -> SmoothFunc:
    # physicists' Hermite polynomial times exp(-x**2)
    h = np.zeros(k + 1)
    h[k] = 1.0
    coeffs = np.polynomial.hermite.herm2poly(h)
    return poly(coeffs) * gaussian()


_TEST_FUNCTIONS: dict[str, Callable[[], SmoothFunc]] = {
    "gaussian": lambda: gaussian(),
    "x-gaussian": lambda: poly((0.0, 1.0)) * gaussian(),
    "hermite-gaussian-2": lambda: _hermite_gaussian(2),
    "hermite-gaussian-3": lambda: _hermite_gaussian(3),
    "wide-gaussian": lambda: gaussian(1.0, 0.0, 2.0),
    "shifted-gaussian": lambda: gaussian(1.0, 0.5, 1.0),
}

TEST_FUNCTION_NAMES = tuple(sorted(_TEST_FUNCTIONS))


def test_function(name: str) -> SmoothFunc:
    """Look up a named Schwartz-class test function."""
    try:
        return _TEST_FUNCTIONS[name]()
    except KeyError:
        raise ValueError(
            f"unknown test function {name!r}; choose from {', '.join(TEST_FUNCTION_NAMES)}"
        ) from None
