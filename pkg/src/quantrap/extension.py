"""Self-adjoint momentum extensions P_alpha on [0, pi] and their squares H_alpha.

The eigenbasis used here is e_n(x) = exp(i (2n + alpha/pi) x) / sqrt(pi), which
satisfies the twisted boundary relation e_n(pi) = exp(i alpha) e_n(0).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import (
    Grid,
    WaveFunction,
    first_derivative,
    integrate,
)
from .errors import InvalidArgument, PreconditionViolated

TWO_PI = 2.0 * np.pi
DEFAULT_TRUNCATION = 256
TAIL_FRACTION = 0.25
INCONCLUSIVE_BAND = 0.3
# coefficient mass below this fraction of ||f||^2 counts as "no tail at all"
NEGLIGIBLE_TAIL = 1e-24


def reduce_alpha(alpha: float) -> float:
    """Map alpha into [0, 2 pi)."""
    a = float(np.mod(alpha, TWO_PI))
    return 0.0 if a == TWO_PI else a


def momentum_eigenvalue(n: int, alpha: float) -> float:
    """p_n = 2n + alpha/pi."""
    return float(Fraction(2 * int(n)) + Fraction(reduce_alpha(alpha) / np.pi))


def energy_eigenvalue_alpha(n: int, alpha: float) -> float:
    """E_n = p_n^2 for H_alpha = P_alpha^2."""
    p = momentum_eigenvalue(n, alpha)
    return p * p


@dataclass(frozen=True)
class AlphaBasisState:
    n: int
    alpha: float

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "alpha", reduce_alpha(self.alpha))

    @property
    def momentum(self) -> float:
        return momentum_eigenvalue(self.n, self.alpha)

    @property
    def energy(self) -> float:
        return energy_eigenvalue_alpha(self.n, self.alpha)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * self.momentum * x) / np.sqrt(np.pi)

    def sample(self, grid: Grid) -> WaveFunction:
        return WaveFunction(grid, self(grid.x))


def alpha_basis_state(n: int, alpha: float) -> AlphaBasisState:
    return AlphaBasisState(n, alpha)


@dataclass(frozen=True, eq=False)
class CoefficientSequence:
    """Coefficients f_n for n = -N..N in the alpha eigenbasis."""

    alpha: float
    coefficients: np.ndarray
    source_norm_sq: float | None = None

    def __post_init__(self):
        c = np.asarray(self.coefficients, dtype=complex)
        if c.ndim != 1 or c.size % 2 != 1:
            raise InvalidArgument("coefficient array must have odd length 2N+1")
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "alpha", reduce_alpha(self.alpha))

    @property
    def truncation(self) -> int:
        return (self.coefficients.size - 1) // 2

    @property
    def indices(self) -> np.ndarray:
        N = self.truncation
        return np.arange(-N, N + 1)

    @property
    def momenta(self) -> np.ndarray:
        return 2.0 * self.indices + self.alpha / np.pi

    def __getitem__(self, n: int) -> complex:
        N = self.truncation
        if abs(n) > N:
            return 0j
        return complex(self.coefficients[n + N])

    def mass(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def reconstruct(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        phases = np.exp(1j * np.outer(x, self.momenta))
        return phases @ self.coefficients / np.sqrt(np.pi)

    def reconstruct_on(self, grid: Grid) -> WaveFunction:
        return WaveFunction(grid, self.reconstruct(grid.x))


def _require_unit_interval(f: WaveFunction) -> None:
    if abs(f.grid.a) > 1e-12 or abs(f.grid.b - np.pi) > 1e-12:
        raise InvalidArgument("alpha-basis projections need a grid on [0, pi]")


def project_onto_alpha_basis(f: WaveFunction, alpha: float, N: int = DEFAULT_TRUNCATION) -> CoefficientSequence:
    """f_n = <e_n, f> for |n| <= N, by Simpson quadrature on f's grid.

    Resolve the highest mode: the grid spacing times 2N should stay well below 1.
    """
    _require_unit_interval(f)
    if N < 0:
        raise InvalidArgument("truncation must be nonnegative")
    alpha = reduce_alpha(alpha)
    n = np.arange(-N, N + 1)
    p = 2.0 * n + alpha / np.pi
    x = f.x
    kernel = np.exp(-1j * np.outer(p, x)) / np.sqrt(np.pi) * f.samples
    coeffs = integrate(f.grid, kernel, axis=1)
    return CoefficientSequence(alpha, coeffs, source_norm_sq=f.norm_sq())


@dataclass(frozen=True)
class DomainReport:
    partial_sum: float
    tail_slope: float
    verdict: str  # consistent-with-domain | inconsistent | inconclusive


def domain_diagnostic(c: CoefficientSequence, order: int) -> DomainReport:
    """Check whether sum |n|^(2 order) |f_n|^2 looks finite.

    The decay exponent s of |f_n|^2 + |f_-n|^2 is fitted over the top quarter
    of |n|. The weighted sum converges iff s + 2 order < -1; slopes within
    INCONCLUSIVE_BAND of that boundary are reported as inconclusive.
    """
    if order not in (1, 2):
        raise InvalidArgument("order must be 1 (P_alpha) or 2 (H_alpha)")
    N = c.truncation
    if N < 16:
        raise InvalidArgument("domain diagnostic needs a truncation N >= 16")
    n = c.indices
    w = np.abs(c.coefficients) ** 2
    partial = float(np.sum(np.abs(n) ** (2 * order) * w))

    m = np.arange(1, N + 1)
    folded = w[N + m] + w[N - m]
    start = int(np.floor((1.0 - TAIL_FRACTION) * N)) + 1
    tail_m = m[start - 1 :]
    tail_w = folded[start - 1 :]

    total = c.source_norm_sq if c.source_norm_sq else float(np.sum(w))
    if total == 0.0 or np.max(tail_w) <= NEGLIGIBLE_TAIL * total:
        return DomainReport(partial, float("-inf"), "consistent-with-domain")

    keep = tail_w > 0
    slope = float(np.polyfit(np.log(tail_m[keep]), np.log(tail_w[keep]), 1)[0])
    boundary = -1.0 - 2.0 * order
    if abs(slope - boundary) <= INCONCLUSIVE_BAND:
        verdict = "inconclusive"
    elif slope < boundary:
        verdict = "consistent-with-domain"
    else:
        verdict = "inconsistent"
    return DomainReport(partial, slope, verdict)


def apply_extension_operator(c: CoefficientSequence, power: int) -> CoefficientSequence:
    """Act with P_alpha (power 1) or H_alpha = P_alpha^2 (power 2) in the eigenbasis."""
    if power not in (1, 2):
        raise InvalidArgument("power must be 1 or 2")
    return CoefficientSequence(c.alpha, c.coefficients * c.momenta**power)


def commutator_residual(f: WaveFunction, alpha: float = 0.0, endpoint_tol: float = 1e-10) -> float:
    """Relative L2 norm of (Q P - P Q) f - i f with P = -i d/dx by centered differences.

    f must vanish at both endpoints, where every P_alpha acts as -i d/dx.
    The result is O(h^2). ``alpha`` only labels the extension: on such f all
    P_alpha agree.
    """
    s = f.samples
    scale = float(np.max(np.abs(s)))
    if scale == 0.0:
        raise InvalidArgument("zero function")
    if abs(s[0]) > endpoint_tol * scale or abs(s[-1]) > endpoint_tol * scale:
        raise PreconditionViolated("commutator check needs f(a) = f(b) = 0")
    h = f.grid.spacing
    x = f.x

    def P(y):
        return -1j * first_derivative(y, h, order=2)

    comm = x * P(s) - P(x * s)
    res = comm - 1j * s
    res[0] = res[-1] = 0.0
    return float(np.sqrt(integrate(f.grid, np.abs(res) ** 2)) / f.norm())
