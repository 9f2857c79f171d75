"""Thin wrappers around adaptive quadrature with explicit tail policy.

Finite pieces go straight to Gauss-Kronrod with a tight absolute
tolerance.  Improper pieces are truncated and the truncation radius is
doubled until the increment drops below tolerance twice in a row; a
divergent integrand therefore raises instead of silently returning the
last partial sum.
"""

from __future__ import annotations

import math

from scipy.integrate import quad

__all__ = ["finite", "improper", "decays"]

ABS_TOL = 1e-10
TAIL_TOL = 1e-12


def finite(g, lo: float, hi: float) -> float:
    """Adaptive quadrature of g over a finite interval."""
    if hi <= lo:
        return 0.0
    val, _ = quad(g, lo, hi, epsabs=ABS_TOL, epsrel=1e-11, limit=200)
    return val


def _tail(g, start: float, direction: float) -> float:
    total = 0.0
    width = 8.0
    a = start
    calm = 0
    for _ in range(64):
        b = a + direction * width
        lo, hi = (a, b) if direction > 0 else (b, a)
        inc = finite(g, lo, hi)
        total += inc
        if abs(inc) < TAIL_TOL:
            calm += 1
            if calm >= 2:
                return total
        else:
            calm = 0
        a = b
        width *= 2.0
    raise ValueError("improper integral did not converge under truncation doubling")


def improper(g, lo: float, hi: float) -> float:
    """Quadrature over (lo, hi) where either end may be infinite."""
    if math.isinf(lo) and math.isinf(hi):
        return _tail(g, 0.0, +1.0) + _tail(g, 0.0, -1.0)
    if math.isinf(hi):
        return _tail(g, lo, +1.0)
    if math.isinf(lo):
        return _tail(g, hi, -1.0)
    return finite(g, lo, hi)


def decays(g, radius: float = 40.0, tol: float = 1e-8) -> bool:
    """Cheap check that g has died off at +/- radius."""
    return abs(g(radius)) <= tol and abs(g(-radius)) <= tol
