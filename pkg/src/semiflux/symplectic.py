"""Two local Hamiltonian models and a fixed-step symplectic workbench.

The first model carries the potential through the derivative of a profile
``theta`` (its Hamiltonian is ``p**2/2 + theta'(q)``, so the force is
``-theta''``); the second rescales the kinetic term by ``1 - alpha(q)``.
Trajectories integrate under classic RK4 with a fixed step, which is not
symplectic but conserves either Hamiltonian to fourth order in the step,
good enough to expose the energy-drift scaling the tests pin down.

``check_closed_dh2`` differences the two analytic first partials of the
second model on a grid and compares the mixed partials; the residual is a
pure truncation signal that vanishes quadratically with the grid step.
``poincare_residual`` reports the kinetic mismatch ``alpha(q) * p**2``
between the two models' momentum flows; it vanishes only where alpha
does.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .smooth import SmoothFunc, const, poly

__all__ = [
    "PhasePoint",
    "HamiltonianPair",
    "Trajectory",
    "DomainExitError",
    "eom",
    "flow",
    "check_closed_dh2",
    "poincare_residual",
    "half_tanh",
    "named_profile",
    "PROFILE_NAMES",
]

_MODELS = ("h1", "h2")


class PhasePoint(NamedTuple):
    q: float
    p: float


class DomainExitError(RuntimeError):
    """The kinetic rescaling degenerated (alpha reached 1) mid-flow."""

    def __init__(self, time: float, q: float):
        self.time = time
        self.q = q
        super().__init__(f"alpha(q) reached 1 at t={time:.6g}, q={q:.6g}")


@dataclass(frozen=True)
class HamiltonianPair:
    """The two models, sharing smooth profiles theta(q) and alpha(q)."""

    theta: SmoothFunc
    alpha: SmoothFunc

    def energy(self, which: str, x: PhasePoint) -> float:
        _check_model(which)
        q, p = x
        if which == "h1":
            return 0.5 * p * p + self.theta.df(q)
        return (1.0 - self.alpha(q)) * 0.5 * p * p

    def velocity(self, which: str, x: PhasePoint) -> PhasePoint:
        """The Hamiltonian vector field of the selected energy.

        (dq/dt, dp/dt) = (dH/dp, -dH/dq), so the energy is a first
        integral of this field by construction.  For h2 the momentum
        component is +alpha'(q) p^2/2; compare :func:`eom`, which keeps
        the opposite sign that the transformation display carries.
        """
        _check_model(which)
        q, p = x
        if which == "h1":
            return PhasePoint(p, -self.theta.d2f(q))
        return PhasePoint((1.0 - self.alpha(q)) * p, 0.5 * self.alpha.df(q) * p * p)


def _check_model(which: str):
    if which not in _MODELS:
        raise ValueError(f"unknown model {which!r}; expected one of {_MODELS}")


def eom(pair: HamiltonianPair, which: str, x: PhasePoint) -> PhasePoint:
    """Right-hand sides as printed in the local-transformation display.

    For h1 this is the Hamiltonian field of the h1 energy.  For h2 the
    printed momentum equation reads dp/dt = -alpha'(q) p^2/2, which is
    the sign-flipped gradient term: it does NOT conserve the h2 energy.
    Flows use :meth:`HamiltonianPair.velocity` (the conservative field);
    this function exists so the printed system itself stays inspectable.
    """
    _check_model(which)
    q, p = x
    if which == "h1":
        return pair.velocity(which, x)
    return PhasePoint((1.0 - pair.alpha(q)) * p, -0.5 * pair.alpha.df(q) * p * p)


@dataclass(frozen=True)
class Trajectory:
    t: np.ndarray
    q: np.ndarray
    p: np.ndarray
    energy: np.ndarray

    @property
    def final(self) -> PhasePoint:
        return PhasePoint(float(self.q[-1]), float(self.p[-1]))

    def energy_drift(self) -> float:
        return float(np.max(np.abs(self.energy - self.energy[0])))

    def rows(self):
        for i in range(len(self.t)):
            yield (
                float(self.t[i]),
                float(self.q[i]),
                float(self.p[i]),
                float(self.energy[i]),
            )


def _rk4_step(pair, which, x: PhasePoint, dt: float) -> PhasePoint:
    k1 = pair.velocity(which, x)
    k2 = pair.velocity(which, PhasePoint(x.q + 0.5 * dt * k1.q, x.p + 0.5 * dt * k1.p))
    k3 = pair.velocity(which, PhasePoint(x.q + 0.5 * dt * k2.q, x.p + 0.5 * dt * k2.p))
    k4 = pair.velocity(which, PhasePoint(x.q + dt * k3.q, x.p + dt * k3.p))
    return PhasePoint(
        x.q + dt * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q) / 6.0,
        x.p + dt * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p) / 6.0,
    )


def flow(
    pair: HamiltonianPair,
    which: str,
    x0: PhasePoint,
    t_end: float,
    dt: float,
    record_every: int = 1,
) -> Trajectory:
    """Integrate Hamilton's equations with classic fixed-step RK4.

    For the rescaled model the flow refuses to cross the degeneracy of
    the kinetic factor: alpha(q) >= 1 raises DomainExitError carrying the
    exit time.
    """
    _check_model(which)
    if dt <= 0.0 or t_end < 0.0:
        raise ValueError("need dt > 0 and t_end >= 0")
    x = PhasePoint(float(x0[0]), float(x0[1]))
    steps = int(math.floor(t_end / dt + 1e-12))
    remainder = t_end - steps * dt

    ts, qs, ps, es = [0.0], [x.q], [x.p], [pair.energy(which, x)]
    _guard_domain(pair, which, x, 0.0)
    t = 0.0
    for i in range(steps):
        x = _rk4_step(pair, which, x, dt)
        t = (i + 1) * dt
        _guard_domain(pair, which, x, t)
        if (i + 1) % record_every == 0 or (i + 1) == steps:
            ts.append(t)
            qs.append(x.q)
            ps.append(x.p)
            es.append(pair.energy(which, x))
    if remainder > 1e-12:
        x = _rk4_step(pair, which, x, remainder)
        t = t_end
        _guard_domain(pair, which, x, t)
        ts.append(t)
        qs.append(x.q)
        ps.append(x.p)
        es.append(pair.energy(which, x))
    return Trajectory(np.array(ts), np.array(qs), np.array(ps), np.array(es))


def _guard_domain(pair, which, x: PhasePoint, t: float):
    if which == "h2" and pair.alpha(x.q) >= 1.0:
        raise DomainExitError(t, x.q)


def check_closed_dh2(
    pair: HamiltonianPair,
    q_range: tuple[float, float] = (-1.0, 1.0),
    p_range: tuple[float, float] = (-1.0, 1.0),
    n: int = 32,
) -> float:
    """Max mixed-partial mismatch of the rescaled model on an n-by-n grid.

    Both mixed partials are formed by central-differencing one analytic
    first partial along the other variable.  The p-derivative route is
    exact for the quadratic momentum dependence, so the residual isolates
    the q-direction truncation term and decays like the square of the
    grid step; it is identically zero (up to rounding) for constant or
    quadratic alpha.
    """
    if n < 2:
        raise ValueError("need at least a 2x2 grid")
    qs = np.linspace(q_range[0], q_range[1], n)
    ps = np.linspace(p_range[0], p_range[1], n)
    hq = (q_range[1] - q_range[0]) / (n - 1)
    hp = (p_range[1] - p_range[0]) / (n - 1)

    def dh2_dp(q, p):
        return (1.0 - pair.alpha(q)) * p

    def dh2_dq(q, p):
        return -0.5 * pair.alpha.df(q) * p * p

    worst = 0.0
    for q in qs:
        a_plus = dh2_dp(q + hq, 1.0)
        a_minus = dh2_dp(q - hq, 1.0)
        for p in ps:
            mixed_qp = (a_plus * p - a_minus * p) / (2.0 * hq)
            mixed_pq = (dh2_dq(q, p + hp) - dh2_dq(q, p - hp)) / (2.0 * hp)
            worst = max(worst, abs(mixed_qp - mixed_pq))
    return worst


def poincare_residual(pair: HamiltonianPair, x: PhasePoint) -> float:
    """Kinetic mismatch p*dH1/dp - p*dH2/dp, which works out to alpha(q)*p**2.

    Zero exactly where the rescaling profile vanishes, and only there;
    reported as computed rather than assumed away.
    """
    q, p = x
    return p * p - (1.0 - pair.alpha(q)) * p * p


def half_tanh() -> SmoothFunc:
    """alpha(q) = tanh(q)/2, a smooth profile bounded away from 1."""

    def f(q):
        return 0.5 * math.tanh(q)

    def df(q):
        c = math.cosh(q)
        return 0.5 / (c * c)

    def d2f(q):
        c = math.cosh(q)
        return -math.tanh(q) / (c * c)

    return SmoothFunc(f=f, df=df, d2f=d2f)


_PROFILES = {
    "zero": lambda: const(0.0),
    "linear": lambda: poly((0.0, 1.0)),
    "quadratic": lambda: poly((0.0, 0.0, 0.5)),
    "cubic": lambda: poly((0.0, 0.0, 0.0, 1.0 / 6.0)),
    "quartic-well": lambda: poly((0.0, 0.0, 0.0, 0.0, 0.25)),
    "half-tanh": half_tanh,
    "quarter-square": lambda: poly((0.0, 0.0, 0.25)),
}

PROFILE_NAMES = tuple(sorted(_PROFILES))


def named_profile(name: str) -> SmoothFunc:
    """Named smooth profiles for theta / alpha command-line selection."""
    try:
        return _PROFILES[name]()
    except KeyError:
        raise ValueError(
            f"unknown profile {name!r}; choose from {', '.join(PROFILE_NAMES)}"
        ) from None
