"""The package's acceptance suite: twelve numbered end-to-end checks.

Each check exercises one published behavior of the toolkit at a fixed
tolerance: the distributional pairing table, the one-sided measure
asymmetry, norm inequalities on random inputs, spectral and propagator
convergence, conservation along flows, and the regularized-delta limit.
The suite is what ``semiflux check-all`` runs and what the acceptance
test module asserts; both consume :func:`run_all`.

Checks are independent and deterministic (fixed seeds), so they may be
executed concurrently; results are always assembled in index order,
making output identical for any worker count.
"""

from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import distributions, hamiltonian, stieltjes, symplectic
from .intervals import Interval, IntervalSet, Orientation
from .piecewise import PiecewiseFn, heaviside, named_function
from .smooth import poly, test_function

__all__ = ["CriterionResult", "run_all", "CRITERIA"]


@dataclass(frozen=True)
class CriterionResult:
    index: int
    name: str
    passed: bool
    requirement: str
    measured: dict
    seconds: float

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        shown = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{verdict}] {self.index:2d} {self.name}: {shown} (require {self.requirement})"

    def to_dict(self) -> dict:
        return {
            "index": self.index,
            "name": self.name,
            "passed": self.passed,
            "requirement": self.requirement,
            "measured": self.measured,
            "seconds": round(self.seconds, 3),
        }


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def _gaussian_phi():
    return test_function("gaussian")


# ---------------------------------------------------------------------------
# 1. the four-entry pairing table


def _check_pairing_table() -> tuple[bool, str, dict]:
    phi = _gaussian_phi()
    cases = {
        "sgn_L_left": ("sgn_L", Orientation.LEFT, -2.0),
        "sgn_R_left": ("sgn_R", Orientation.LEFT, 0.0),
        "sgn_L_right": ("sgn_L", Orientation.RIGHT, 0.0),
        "sgn_R_right": ("sgn_R", Orientation.RIGHT, -2.0),
    }
    measured = {}
    ok = True
    for key, (fname, o, want) in cases.items():
        got = stieltjes.pair_against_test_derivative(named_function(fname), phi, o)
        measured[key] = got
        ok = ok and abs(got - want) < 1e-8
    return ok, "each within 1e-8 of (-2, 0, 0, -2)", measured


# 2. balanced step built from a single one-sided step


def _check_single_step_construction() -> tuple[bool, str, dict]:
    hl = heaviside(Orientation.LEFT)
    balanced = hl - hl.reflect()
    got = stieltjes.pair_against_test_derivative(
        balanced, _gaussian_phi(), Orientation.LEFT
    )
    return abs(got - (-1.0)) < 1e-8, "equals -1 within 1e-8", {"pairing": got}


# 3. Euler characters


def _check_euler_characters() -> tuple[bool, str, dict]:
    one_sided = distributions.euler_character(
        named_function("sgn_L"), Orientation.LEFT
    )
    two_sided = distributions.euler_character(
        named_function("sgn_twosided"), Orientation.STANDARD
    )
    ok = one_sided == 0 and two_sided == 1
    return ok, "exactly 0 and 1", {"one_sided": one_sided, "two_sided": two_sided}


# 4. measure asymmetry of the one-sided step


def _check_measure_asymmetry() -> tuple[bool, str, dict]:
    hl = heaviside(Orientation.LEFT)
    left_measure = stieltjes.Measure.from_distribution(hl, Orientation.LEFT)
    half_open = stieltjes.measure_of(left_measure, Interval.left_open(0.0, 1.0))
    closed_reading = stieltjes.measure_of(
        stieltjes.Measure.from_distribution(hl, Orientation.STANDARD),
        Interval.closed(0.0, 1.0),
    )
    ok = half_open == 0.0 and closed_reading == 1.0
    return ok, "exactly 0 and 1", {"half_open": half_open, "closed": closed_reading}


# 5. norm chain on random piecewise polynomials


def _random_piecewise_poly(rng) -> PiecewiseFn:
    n_breaks = int(rng.integers(0, 4))
    bps = tuple(sorted(rng.uniform(0.05, 0.95, size=n_breaks).tolist()))
    pieces = tuple(
        poly(tuple(rng.uniform(-2.0, 2.0, size=int(rng.integers(1, 4))).tolist()))
        for _ in range(n_breaks + 1)
    )
    values = []
    for b in bps:
        mode = rng.integers(0, 3)
        if mode == 0:
            values.append(None)
        elif mode == 1:
            values.append(float(rng.uniform(-2.5, 2.5)))
        else:
            values.append(None)
    return PiecewiseFn(breakpoints=bps, pieces=pieces, values=tuple(values))


def _check_norm_chain() -> tuple[bool, str, dict]:
    rng = np.random.default_rng(20240817)
    unit = IntervalSet(Interval.closed(0.0, 1.0))
    slack = 1e-8
    violations = 0
    worst = 0.0
    for _ in range(1000):
        f = _random_piecewise_poly(rng)
        rec = stieltjes.norms(f, unit, ps=(1.0, 2.0, 4.0))
        for p in (1.0, 2.0, 4.0):
            gap = rec.lp[p] - rec.sup
            worst = max(worst, gap)
            if gap > slack:
                violations += 1
        gap = rec.sup - rec.bv
        worst = max(worst, gap)
        if gap > slack:
            violations += 1
    return (
        violations == 0,
        "0 violations of lp <= sup <= bv over 1000 random functions",
        {"violations": violations, "worst_gap": worst},
    )


# 6. orthogonality of the two one-sided jump readings


def _random_step(rng) -> PiecewiseFn:
    n_breaks = int(rng.integers(1, 5))
    bps = tuple(sorted(rng.uniform(-2.0, 2.0, size=n_breaks).tolist()))
    levels = rng.uniform(-3.0, 3.0, size=n_breaks + 1)
    pieces = tuple(poly((float(v),)) for v in levels)
    values = tuple(float(v) for v in levels[:-1])
    return PiecewiseFn(breakpoints=bps, pieces=pieces, values=values)


def _check_orthogonality() -> tuple[bool, str, dict]:
    rng = np.random.default_rng(20240818)
    cfg = hamiltonian.HamiltonianConfig(a=1.0, alpha=0.5)
    bad_mass = 0
    worst_cross = 0.0
    for _ in range(500):
        f_left = _random_step(rng)
        f_right = f_left.extend(Orientation.RIGHT)
        masses_l = stieltjes.oriented_jump_masses(f_left, Orientation.RIGHT)
        masses_r = stieltjes.oriented_jump_masses(f_right, Orientation.LEFT)
        if any(m != 0.0 for _, m in masses_l) or any(m != 0.0 for _, m in masses_r):
            bad_mass += 1
        rec = hamiltonian.decomposition_check(f_left, f_right, cfg)
        worst_cross = max(
            worst_cross, abs(rec.cross_left_right), abs(rec.cross_right_left)
        )
    ok = bad_mass == 0 and worst_cross < 1e-10
    return (
        ok,
        "mirror-orientation jump masses exactly 0; |cross| < 1e-10, 500 pairs",
        {"nonzero_mass_pairs": bad_mass, "worst_cross": worst_cross},
    )


# 7. operator norm ratio


def _check_operator_norm_ratio() -> tuple[bool, str, dict]:
    cfg = hamiltonian.HamiltonianConfig(
        a=1.0, alpha=1.0, orientation=Orientation.LEFT, grid_n=64, circumference=2.0
    )
    op = hamiltonian.build(cfg)
    measured = {}
    ok = True
    for name in ("gaussian", "x-gaussian", "hermite-gaussian-2"):
        r = hamiltonian.operator_norm_ratio(op, test_function(name))
        measured[name] = r
        ok = ok and abs(r - 1.0) < 1e-6
    return ok, "ratio = 1 within 1e-6 for 3 test functions", measured


# 8. free spectrum against the exact modes


def _free_spectrum_errors(n: int) -> list[float]:
    cfg = hamiltonian.HamiltonianConfig(
        a=1.0, alpha=0.0, grid_n=n, circumference=2.0 * math.pi
    )
    eigs = hamiltonian.spectrum(hamiltonian.build(cfg))[:7]
    exact = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0]
    errs = []
    for got, want in zip(eigs, exact):
        if want == 0.0:
            errs.append(abs(float(got)))
        else:
            errs.append(abs(float(got) - want) / want)
    return errs


def _check_free_spectrum() -> tuple[bool, str, dict]:
    errs_256 = _free_spectrum_errors(256)
    errs_128 = _free_spectrum_errors(128)
    worst = max(errs_256)
    ratio = max(errs_128) / worst
    ok = worst < 2e-3 and 3.2 < ratio < 4.8
    return (
        ok,
        "first 7 modes within 2e-3 (relative; absolute for mode 0); error quarters 128->256",
        {"worst_error_256": worst, "refinement_ratio": ratio},
    )


# 9. Krein model symmetry and signature


def _check_krein() -> tuple[bool, str, dict]:
    op, form = hamiltonian.krein_model(64, 2.0, Orientation.LEFT)
    rec = hamiltonian.krein_check(op, form)
    half = 32
    ok = (
        rec.j_symmetry_residual < 1e-12
        and abs(rec.pos_subspace_dim - half) <= 1
        and abs(rec.neg_subspace_dim - half) <= 1
        and rec.pos_subspace_dim + rec.neg_subspace_dim + rec.neutral_count == 64
    )
    return (
        ok,
        "J*M symmetry residual < 1e-12; signature counts each 32 +- 1",
        {
            "residual": rec.j_symmetry_residual,
            "positive": rec.pos_subspace_dim,
            "negative": rec.neg_subspace_dim,
        },
    )


# 10. Trotter product versus the matrix exponential


def _check_trotter() -> tuple[bool, str, dict]:
    cfg = hamiltonian.HamiltonianConfig(
        a=1.0, alpha=0.5, orientation=Orientation.LEFT, grid_n=64, circumference=1.0
    )
    op = hamiltonian.build(cfg)
    x = op.grid
    psi0 = 1.0 + 0.5 * np.sin(2.0 * math.pi * x / cfg.circumference)
    psi0 /= math.sqrt(op.spacing * float(np.sum(psi0 * psi0)))
    reference = hamiltonian.propagate(op, psi0, 0.1, "exponential")
    errs = {}
    for slices in (32, 64):
        approx = hamiltonian.propagate(op, psi0, 0.1, "trotter", slices=slices)
        errs[slices] = math.sqrt(
            op.spacing * float(np.sum((approx - reference) ** 2))
        )
    ratio = errs[32] / errs[64]
    ok = 1.6 < ratio < 2.4
    return (
        ok,
        "L2 error halves from 32 to 64 slices (ratio within 20% of 2)",
        {"err_32": errs[32], "err_64": errs[64], "ratio": ratio},
    )


# 11. symplectic conservation suite


def _check_symplectic() -> tuple[bool, str, dict]:
    pair = symplectic.HamiltonianPair(
        theta=symplectic.named_profile("zero"), alpha=symplectic.half_tanh()
    )
    x0 = symplectic.PhasePoint(0.0, 1.0)
    drift = symplectic.flow(pair, "h2", x0, 1.0, 1e-3).energy_drift()

    coarse = symplectic.flow(pair, "h2", x0, 1.0, 1.6e-2).energy_drift()
    fine = symplectic.flow(pair, "h2", x0, 1.0, 8e-3).energy_drift()
    step_ratio = coarse / fine

    r32 = symplectic.check_closed_dh2(pair, (-1.0, 1.0), (-1.0, 1.0), 32)
    r64 = symplectic.check_closed_dh2(pair, (-1.0, 1.0), (-1.0, 1.0), 64)
    grid_ratio = r32 / r64

    ok = drift < 1e-8 and 12.0 < step_ratio < 20.0 and 3.2 < grid_ratio < 4.8
    return (
        ok,
        "drift < 1e-8 at dt=1e-3; drift ratio within 25% of 16; closedness residual O(h^2)",
        {"drift": drift, "step_ratio": step_ratio, "grid_ratio": grid_ratio},
    )


# 12. regularized delta against the smeared-Gaussian limit


def _check_regularized_delta() -> tuple[bool, str, dict]:
    phi = _gaussian_phi()
    err = {}
    for eps in (1e-3, 5e-4):
        got = distributions.regularized_pair(distributions.RegularizedDelta(eps), phi)
        err[eps] = abs(got - 1.0)
    ratio = err[1e-3] / err[5e-4]
    ok = err[1e-3] < 5e-3 and 1.5 < ratio < 2.5
    return (
        ok,
        "|pairing - 1| < 5e-3 at eps=1e-3 and error halves with eps",
        {"err_1e3": err[1e-3], "err_5e4": err[5e-4], "ratio": ratio},
    )


CRITERIA = (
    ("pairing-table", _check_pairing_table),
    ("single-step-construction", _check_single_step_construction),
    ("euler-characters", _check_euler_characters),
    ("measure-asymmetry", _check_measure_asymmetry),
    ("norm-chain", _check_norm_chain),
    ("orthogonality", _check_orthogonality),
    ("operator-norm-ratio", _check_operator_norm_ratio),
    ("free-spectrum", _check_free_spectrum),
    ("krein-signature", _check_krein),
    ("trotter-halving", _check_trotter),
    ("symplectic-suite", _check_symplectic),
    ("regularized-delta", _check_regularized_delta),
)


def _native(v):
    if isinstance(v, (bool, np.bool_)):
        return bool(v)
    if isinstance(v, (int, np.integer)):
        return int(v)
    if isinstance(v, (float, np.floating)):
        return float(v)
    return v


def _run_one(index: int, name: str, fn) -> CriterionResult:
    start = time.perf_counter()
    passed, requirement, measured = fn()
    return CriterionResult(
        index=index,
        name=name,
        passed=bool(passed),
        requirement=requirement,
        measured={k: _native(v) for k, v in measured.items()},
        seconds=time.perf_counter() - start,
    )


def run_all(max_workers: int | None = None) -> list[CriterionResult]:
    """Run every acceptance check; results come back in index order.

    ``max_workers`` > 1 runs the independent checks in a thread pool;
    the assembled list (and any serialization of it) is identical for
    every worker count because ordering is by criterion index, never by
    completion time.
    """
    jobs = [(i + 1, name, fn) for i, (name, fn) in enumerate(CRITERIA)]
    if max_workers is None or max_workers <= 1:
        return [_run_one(*job) for job in jobs]
    with ThreadPoolExecutor(max_workers=max_workers) as pool:
        futures = [pool.submit(_run_one, *job) for job in jobs]
        return [f.result() for f in futures]
