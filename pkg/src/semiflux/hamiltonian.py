"""Discretized sign-coupled Schrodinger operator on a periodic grid.

The continuum object is ``(a**2 - kappa * alpha * sgn(x)) (i d/dx)**2``
with ``kappa = 1/4`` by default: a constant-coefficient second-derivative
quadratic form whose coefficient takes one value left of the origin and
another right of it, with the value exactly at the origin decided by the
chosen one-sided sign convention.  On an n-point periodic grid with the
origin on a node, that becomes ``M = diag(c) @ D2`` where ``D2`` is the
(positive semidefinite) periodic second-difference matrix.

The elliptic regime needs the coefficient positive everywhere, i.e.
``kappa * |alpha| < a**2``; outside it the operator is indefinite and
only the Krein-form diagnostics accept it, behind an explicit flag.

The coupling knob exists because the reduced continuum form of the same
model carries ``alpha/2`` where the operator form carries ``alpha/4``;
the default follows the operator form and the knob makes the other
reading reachable without touching code.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import quadrature
from .intervals import Interval, IntervalSet, Orientation
from .piecewise import PiecewiseFn, sgn
from .smooth import SmoothFunc
from .stieltjes import Measure, integrate

__all__ = [
    "HamiltonianConfig",
    "HamiltonianOperator",
    "KreinForm",
    "KreinCheckRecord",
    "DecompositionRecord",
    "build",
    "spectrum",
    "operator_norm_ratio",
    "krein_model",
    "krein_check",
    "decomposition_check",
    "propagate",
    "config_from_toml",
    "write_spectrum_csv",
]


@dataclass(frozen=True)
class HamiltonianConfig:
    """Parameters of the discretized operator.

    ``a`` is the free dispersion scale, ``alpha`` the sign coupling,
    ``coupling_factor`` the fraction of alpha entering the coefficient
    (1/4 by default, see module docstring).  ``allow_indefinite`` admits
    coefficients that change sign, for Krein-form diagnostics only.
    """

    a: float = 1.0
    alpha: float = 0.0
    orientation: Orientation = Orientation.LEFT
    grid_n: int = 128
    circumference: float = 2.0 * math.pi
    coupling_factor: float = 0.25
    allow_indefinite: bool = False

    def __post_init__(self):
        if self.a <= 0.0:
            raise ValueError("dispersion scale a must be positive")
        if self.grid_n < 8 or self.grid_n % 2:
            raise ValueError("grid_n must be even and at least 8")
        if self.circumference <= 0.0:
            raise ValueError("circumference must be positive")
        if self.orientation is Orientation.STANDARD:
            raise ValueError("operator needs a one-sided orientation")
        if not self.is_elliptic and not self.allow_indefinite:
            raise ValueError(
                "indefinite coefficient: coupling_factor*|alpha| >= a**2 "
                "(pass allow_indefinite=True for Krein diagnostics)"
            )

    @property
    def is_elliptic(self) -> bool:
        return self.coupling_factor * abs(self.alpha) < self.a * self.a

    def sign_at_origin(self) -> float:
        return -1.0 if self.orientation is Orientation.LEFT else 1.0

    def coefficient_at(self, x: float) -> float:
        if x > 0.0:
            s = 1.0
        elif x < 0.0:
            s = -1.0
        else:
            s = self.sign_at_origin()
        return self.a * self.a - self.coupling_factor * self.alpha * s


@dataclass(frozen=True)
class HamiltonianOperator:
    """The dense grid operator ``matrix = diag(coefficient) @ second_difference``."""

    grid: np.ndarray
    coefficient: np.ndarray
    matrix: np.ndarray
    config: HamiltonianConfig | None = None

    @property
    def n(self) -> int:
        return len(self.grid)

    @property
    def spacing(self) -> float:
        return float(self.grid[1] - self.grid[0])

    def second_difference(self) -> np.ndarray:
        return self.matrix / self.coefficient[:, None]


def _grid_and_d2(grid_n: int, circumference: float) -> tuple[np.ndarray, np.ndarray]:
    h = circumference / grid_n
    x = (np.arange(grid_n) - grid_n // 2) * h
    d2 = 2.0 * np.eye(grid_n) - np.eye(grid_n, k=1) - np.eye(grid_n, k=-1)
    d2[0, -1] -= 1.0
    d2[-1, 0] -= 1.0
    return x, d2 / (h * h)


def _sign_samples(x: np.ndarray, o: Orientation) -> np.ndarray:
    s = np.where(x > 0.0, 1.0, -1.0)
    s[x == 0.0] = -1.0 if o is Orientation.LEFT else 1.0
    return s


def build(cfg: HamiltonianConfig) -> HamiltonianOperator:
    """Assemble the dense operator for a configuration.

    The grid always places the origin on a node (grid_n is even), so the
    one-sided value convention of the sign actually enters the matrix.
    """
    x, d2 = _grid_and_d2(cfg.grid_n, cfg.circumference)
    s = _sign_samples(x, cfg.orientation)
    c = cfg.a * cfg.a - cfg.coupling_factor * cfg.alpha * s
    return HamiltonianOperator(grid=x, coefficient=c, matrix=c[:, None] * d2, config=cfg)


def spectrum(op: HamiltonianOperator) -> np.ndarray:
    """Eigenvalues, ascending.

    In the elliptic regime the problem is symmetrized exactly: the
    eigenvalues of ``diag(c) @ D2`` are those of the symmetric-definite
    pencil ``D2 v = lambda diag(1/c) v``, so we get real values from a
    symmetric solver.  An indefinite coefficient falls back to a general
    eigensolver and returns values sorted by real part (complex dtype).
    """
    d2 = op.second_difference()
    d2 = 0.5 * (d2 + d2.T)
    if np.all(op.coefficient > 0.0):
        vals = scipy.linalg.eigh(d2, np.diag(1.0 / op.coefficient), eigvals_only=True)
        return np.asarray(vals)
    vals = np.linalg.eigvals(op.coefficient[:, None] * d2)
    return vals[np.lexsort((vals.imag, vals.real))]


def free_mode_eigenvalue(k: int, a: float, circumference: float) -> float:
    """Continuum eigenvalue of the alpha=0 operator for integer mode k."""
    return (a * 2.0 * math.pi * k / circumference) ** 2


# ---------------------------------------------------------------------------
# the norm-chain ratio


def _fd1(g):
    return lambda x: (g(x + 5e-7) - g(x - 5e-7)) / 1e-6


def _fd2(g):
    return lambda x: (g(x + 5e-7) - 2.0 * g(x) + g(x - 5e-7)) / 2.5e-13


def _abs_curvature_piecewise(phi: SmoothFunc, side_scales: tuple[float, float]) -> PiecewiseFn:
    """|scale * phi''| as a piecewise function split at the origin.

    The derivative slots of the wrapped pieces are finite differences;
    only pointwise evaluation is consumed downstream.
    """
    def piece(scale):
        g = lambda x: abs(scale * phi.d2f(x))
        return SmoothFunc(f=g, df=_fd1(g), d2f=_fd2(g))

    left, right = side_scales
    value = 0.5 * (abs(left) + abs(right)) * abs(phi.d2f(0.0))
    return PiecewiseFn(
        breakpoints=(0.0,), pieces=(piece(left), piece(right)), values=(value,)
    )


def operator_norm_ratio(op: HamiltonianOperator, phi: SmoothFunc) -> float:
    """Ratio of the split operator norm to the chain bound; 1 in exact arithmetic.

    The numerator follows the triangle split of the operator applied to
    phi: the free part contributes ``a**2 * ||phi''||_1`` and the sign
    part ``kappa * |alpha| * ||sgn * phi''||_1``, each an L1 integral
    against the Lebesgue measure over the whole line.  The denominator
    is the chain bound ``(1 + kappa*|alpha|/a**2) * a**2 * ||phi''||_1``.
    Both sides share the same computed curvature norm, so the ratio is
    scale-invariant in phi and no prior normalization is required.
    """
    cfg = op.config
    if cfg is None:
        raise ValueError("operator carries no configuration")
    if not quadrature.decays(phi) or not quadrature.decays(phi.d2f):
        raise ValueError("test function must decay at infinity")
    a2 = cfg.a * cfg.a
    kappa = cfg.coupling_factor
    step = sgn(cfg.orientation)
    line = IntervalSet(Interval.open(-math.inf, math.inf))
    lam = Measure.lebesgue()

    curvature = _abs_curvature_piecewise(phi, (1.0, 1.0))
    curvature_l1 = integrate(curvature, lam, line)
    if curvature_l1 <= 0.0:
        raise ValueError("test function has no curvature to normalize by")

    sign_left = kappa * cfg.alpha * step.left_limit(0.0)
    sign_right = kappa * cfg.alpha * step.right_limit(0.0)
    signed = _abs_curvature_piecewise(phi, (sign_left, sign_right))
    potential_l1 = integrate(signed, lam, line)

    folded = kappa * abs(cfg.alpha) / a2
    numerator = a2 * curvature_l1 + potential_l1
    denominator = (1.0 + folded) * a2 * curvature_l1
    return numerator / denominator


# ---------------------------------------------------------------------------
# Krein-form diagnostics


@dataclass(frozen=True)
class KreinForm:
    """A diagonal fundamental symmetry J (entries +-1, J @ J = I)."""

    j_diag: np.ndarray

    def __post_init__(self):
        if not np.all(np.abs(self.j_diag) == 1.0):
            raise ValueError("fundamental symmetry entries must be +-1")

    @classmethod
    def from_orientation(cls, grid: np.ndarray, o: Orientation) -> "KreinForm":
        return cls(_sign_samples(np.asarray(grid, dtype=float), o))

    @classmethod
    def identity(cls, n: int) -> "KreinForm":
        return cls(np.ones(n))

    @property
    def signature(self) -> tuple[int, int]:
        plus = int(np.sum(self.j_diag > 0.0))
        return plus, len(self.j_diag) - plus

    def matrix(self) -> np.ndarray:
        return np.diag(self.j_diag)


@dataclass(frozen=True)
class KreinCheckRecord:
    j_symmetry_residual: float
    pos_subspace_dim: int
    neg_subspace_dim: int
    neutral_count: int

    def to_dict(self) -> dict:
        return {
            "j_symmetry_residual": self.j_symmetry_residual,
            "pos_subspace_dim": self.pos_subspace_dim,
            "neg_subspace_dim": self.neg_subspace_dim,
            "neutral_count": self.neutral_count,
        }


def krein_model(
    grid_n: int, circumference: float, orientation: Orientation = Orientation.LEFT
) -> tuple[HamiltonianOperator, KreinForm]:
    """The pure sign-coefficient model ``-sgn(x) d^2/dx^2`` with its J.

    The coefficient is the sampled sign itself, so the operator is
    genuinely indefinite; ``J @ M`` recovers the plain second-difference
    matrix, symmetric by construction.
    """
    x, d2 = _grid_and_d2(grid_n, circumference)
    s = _sign_samples(x, orientation)
    op = HamiltonianOperator(grid=x, coefficient=s, matrix=s[:, None] * d2, config=None)
    return op, KreinForm(s.copy())


def krein_check(op: HamiltonianOperator, form: KreinForm) -> KreinCheckRecord:
    """Symmetry residual of J*M and the J-form signature over eigenvectors.

    For each eigenvector v of M the sign of Re(v* J v) classifies the
    eigendirection as J-positive, J-negative, or numerically neutral.
    """
    j = form.j_diag
    if len(j) != op.n:
        raise ValueError("fundamental symmetry size does not match operator")
    jm = j[:, None] * op.matrix
    residual = float(np.max(np.abs(jm - jm.T)))
    _, vecs = np.linalg.eig(op.matrix)
    plus = minus = neutral = 0
    for k in range(vecs.shape[1]):
        v = vecs[:, k]
        s = float(np.real(np.vdot(v, j * v)))
        if s > 1e-8:
            plus += 1
        elif s < -1e-8:
            minus += 1
        else:
            neutral += 1
    return KreinCheckRecord(residual, plus, minus, neutral)


# ---------------------------------------------------------------------------
# block decomposition across the two one-sided spaces


@dataclass(frozen=True)
class DecompositionRecord:
    """The four bra/ket blocks of the quadratic form, by orientation."""

    diag_left: float
    diag_right: float
    cross_left_right: float
    cross_right_left: float

    def to_dict(self) -> dict:
        return {
            "diag_left": self.diag_left,
            "diag_right": self.diag_right,
            "cross_left_right": self.cross_left_right,
            "cross_right_left": self.cross_right_left,
        }


def _block(
    bra: PiecewiseFn, ket: PiecewiseFn, o_bra: Orientation, cfg: HamiltonianConfig
) -> float:
    """One quadratic-form block: smooth overlap plus bra-oriented jump content.

    The smooth part integrates ``bra * (-c * ket'')`` region by region.
    The ket's jump content is read under the bra's orientation, which is
    the quotient-class rule: jumps semicontinuous the other way carry
    zero mass and the cross blocks vanish structurally.
    """
    cuts = sorted(set(bra.breakpoints) | set(ket.breakpoints) | {0.0})
    edges = [-math.inf] + cuts + [math.inf]
    total = 0.0
    for i in range(len(edges) - 1):
        lo, hi = edges[i], edges[i + 1]
        mid = _probe_point(lo, hi)
        bra_piece = bra._left_piece(mid)
        ket_piece = ket._left_piece(mid)
        if ket_piece.kind == "const":
            continue
        c_mid = cfg.coefficient_at(mid)
        total += quadrature.improper(
            lambda x, bp=bra_piece, kp=ket_piece, c=c_mid: bp(x) * (-c * kp.d2f(x)),
            lo,
            hi,
        )
    for b in ket.breakpoints:
        mass = ket.oriented_jump(b, o_bra)
        if mass != 0.0:
            total += bra.value_or_limit(b, o_bra) * cfg.coefficient_at(b) * mass
    return total


def _probe_point(lo: float, hi: float) -> float:
    if math.isinf(lo) and math.isinf(hi):
        return 1.0
    if math.isinf(lo):
        return hi - 1.0
    if math.isinf(hi):
        return lo + 1.0
    return 0.5 * (lo + hi)


def decomposition_check(
    psi_left: PiecewiseFn, psi_right: PiecewiseFn, cfg: HamiltonianConfig
) -> DecompositionRecord:
    """Evaluate the four orientation blocks of the quadratic form.

    The two cross blocks pair a bra of one orientation against the jump
    content of the other orientation's ket; for a left-semicontinuous
    ket (and mirrored) that content has measure zero under the bra's
    reading, so the cross terms vanish without being hard-coded.
    """
    return DecompositionRecord(
        diag_left=_block(psi_left, psi_left, Orientation.LEFT, cfg),
        diag_right=_block(psi_right, psi_right, Orientation.RIGHT, cfg),
        cross_left_right=_block(psi_left, psi_right, Orientation.LEFT, cfg),
        cross_right_left=_block(psi_right, psi_left, Orientation.RIGHT, cfg),
    )


# ---------------------------------------------------------------------------
# imaginary-time propagation


def propagate(
    op: HamiltonianOperator,
    psi0: np.ndarray,
    tau: float,
    method: str = "exponential",
    slices: int = 32,
) -> np.ndarray:
    """Imaginary-time evolution of a grid vector.

    ``exponential`` applies the dense matrix exponential of ``-tau * M``.
    ``trotter`` multiplies per-slice Gaussian kernels whose width at each
    row is set by the local coefficient, the stationary-phase form of the
    sliced path integral after the momentum Gaussian is integrated out;
    its error against the exponential is first order in the slice count.
    """
    if tau < 0.0:
        raise ValueError("imaginary time tau must be nonnegative")
    psi0 = np.asarray(psi0, dtype=float)
    if psi0.shape != (op.n,):
        raise ValueError(f"psi0 must have shape ({op.n},)")
    if np.any(op.coefficient <= 0.0):
        raise ValueError("propagation needs the elliptic regime (positive coefficient)")
    if method == "exponential":
        return scipy.linalg.expm(-tau * op.matrix) @ psi0
    if method == "trotter":
        if slices < 1:
            raise ValueError("need at least one slice")
        return _trotter_product(op, psi0, tau, slices)
    raise ValueError(f"unknown method {method!r}")


def _trotter_product(op, psi0, tau, slices):
    delta = tau / slices
    if delta == 0.0:
        return psi0.copy()
    length = op.n * op.spacing
    d = op.grid[:, None] - op.grid[None, :]
    d = (d + 0.5 * length) % length - 0.5 * length
    width = 4.0 * op.coefficient[:, None] * delta
    kernel = np.exp(-d * d / width) / np.sqrt(math.pi * width)
    kernel *= op.spacing
    psi = psi0.copy()
    for _ in range(slices):
        psi = kernel @ psi
    return psi


# ---------------------------------------------------------------------------
# config and CSV plumbing


def config_from_toml(source) -> HamiltonianConfig:
    """Read a [hamiltonian] table from a TOML file path or file object."""
    try:
        import tomllib
    except ModuleNotFoundError:
        import tomli as tomllib
    if hasattr(source, "read"):
        data = tomllib.loads(source.read())
    else:
        with open(source, "rb") as fp:
            data = tomllib.load(fp)
    table = data.get("hamiltonian", {})
    kwargs = {}
    for key in ("a", "alpha", "circumference", "coupling_factor"):
        if key in table:
            kwargs[key] = float(table[key])
    if "grid_n" in table:
        kwargs["grid_n"] = int(table["grid_n"])
    if "orientation" in table:
        kwargs["orientation"] = Orientation.parse(str(table["orientation"]))
    if "allow_indefinite" in table:
        kwargs["allow_indefinite"] = bool(table["allow_indefinite"])
    return HamiltonianConfig(**kwargs)


def write_spectrum_csv(fp, eigenvalues) -> None:
    """Write (index, eigenvalue) rows with full float precision."""
    writer = csv.writer(fp)
    writer.writerow(["index", "eigenvalue"])
    for i, v in enumerate(np.asarray(eigenvalues)):
        if np.iscomplexobj(v) and abs(complex(v).imag) > 0.0:
            writer.writerow([i, f"{complex(v).real:.17g}{complex(v).imag:+.17g}j"])
        else:
            writer.writerow([i, f"{float(np.real(v)):.17g}"])


def spectrum_csv_text(eigenvalues) -> str:
    buf = io.StringIO()
    write_spectrum_csv(buf, eigenvalues)
    return buf.getvalue()
