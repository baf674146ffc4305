"""Singular barrier models: the centrifugal term n(n-1)/x^2 and the Calogero
Hamiltonian -d^2/dx^2 + x^2 + gamma/x^2, plus the epsilon-regularized version.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import eigh_tridiagonal
from scipy.special import gammaln

from .core import Grid, WaveFunction, integrate, second_derivative, stencil_margin
from .errors import InvalidArgument, UnsupportedForRegularized, UnsupportedRange
from .spectral import evolve, expand, probability_current

X_MAX = 12.0
RADIAL_POINTS = 8001
REGULARIZED_POINTS = 4000


@dataclass(frozen=True)
class CalogeroSpec:
    gamma: float
    epsilon: float = 0.0

    def __post_init__(self):
        if not self.gamma > -0.25:
            raise InvalidArgument(f"gamma must exceed -1/4, got {self.gamma}")
        if self.epsilon < 0:
            raise InvalidArgument(f"epsilon must be >= 0, got {self.epsilon}")

    @property
    def alpha_exp(self) -> float:
        return 0.5 * math.sqrt(1.0 + 4.0 * self.gamma)

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return x**2 + self.gamma / (x**2 + self.epsilon)


@dataclass(frozen=True)
class CentrifugalSpec:
    """-d^2/dx^2 + n(n-1)/x^2 with generalized ground state |x|^n."""

    n_exp: int

    def __post_init__(self):
        if int(self.n_exp) != self.n_exp or self.n_exp < 2:
            raise InvalidArgument(f"centrifugal exponent must be an integer >= 2, got {self.n_exp}")

    def potential(self, x):
        x = np.asarray(x, dtype=float)
        return self.n_exp * (self.n_exp - 1) / x**2


def calogero_energy(n: int, gamma: float) -> float:
    if n < 0:
        raise InvalidArgument("n must be >= 0")
    if not gamma > -0.25:
        raise InvalidArgument(f"gamma must exceed -1/4, got {gamma}")
    return 4 * n + 2 + math.sqrt(1.0 + 4.0 * gamma)


def laguerre(n: int, alpha: float, u):
    """Generalized Laguerre polynomial L_n^alpha(u) by the three-term recurrence."""
    if n < 0:
        raise InvalidArgument("degree must be >= 0")
    u = np.asarray(u, dtype=float)
    prev = np.ones_like(u)
    if n == 0:
        return prev
    cur = 1.0 + alpha - u
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - u) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_explicit(n: int, alpha: float, u):
    """Explicit sum over nu of (n+alpha)! / ((n-nu)! (alpha+nu)!) (-u)^nu / nu!,
    factorials taken as Gamma functions."""
    u = np.asarray(u, dtype=float)
    total = np.zeros_like(u)
    for nu in range(n + 1):
        log_c = gammaln(n + alpha + 1) - gammaln(n - nu + 1) - gammaln(alpha + nu + 1) - gammaln(nu + 1)
        total = total + math.exp(log_c) * (-u) ** nu
    return total


@dataclass(frozen=True)
class CalogeroEigenstate:
    """f_n(x) = N x^(alpha + 1/2) exp(-x^2/2) L_n^alpha(x^2), on one semi-axis.

    ``branch`` 'right' lives on x > 0; 'left' is the mirror image on x < 0.
    The factor N normalizes over the branch's semi-axis.
    """

    n: int
    spec: CalogeroSpec
    branch: str = "right"

    @property
    def energy(self) -> float:
        return calogero_energy(self.n, self.spec.gamma)

    @property
    def normalization(self) -> float:
        a = self.spec.alpha_exp
        # integral over (0, inf) of x^(2a+1) e^(-x^2) L_n^a(x^2)^2 = Gamma(n+a+1) / (2 n!)
        return math.exp(-0.5 * (gammaln(self.n + a + 1) - gammaln(self.n + 1) - math.log(2.0)))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        r = x if self.branch == "right" else -x
        a = self.spec.alpha_exp
        rp = np.maximum(r, 0.0)
        vals = self.normalization * rp ** (a + 0.5) * np.exp(-rp**2 / 2) * laguerre(self.n, a, rp**2)
        return np.where(r > 0, vals, 0.0)

    def sample(self, grid: Grid) -> WaveFunction:
        return WaveFunction(grid, self(grid.x).astype(complex))


def calogero_eigenstate(n: int, spec: CalogeroSpec, branch: str = "right") -> CalogeroEigenstate:
    if spec.epsilon != 0:
        raise UnsupportedForRegularized("closed-form eigenstates exist only for epsilon = 0")
    if branch not in ("right", "left"):
        raise InvalidArgument("branch must be 'right' or 'left'")
    if n < 0:
        raise InvalidArgument("n must be >= 0")
    return CalogeroEigenstate(int(n), spec, branch)


def radial_grid(x_max: float = X_MAX, n_points: int = RADIAL_POINTS) -> Grid:
    return Grid.over(0.0, x_max, n_points)


def residual(h_spec, state: WaveFunction, energy: float, order: int = 4) -> float:
    """||(H - E) f|| / ||f|| with the exact potential and a centered FD second derivative.

    Points where the potential is singular (x = 0) and the stencil margin at
    both ends are left out of the norm. The first two interior points next to
    a grid edge are always excluded.
    """
    h = state.grid.spacing
    x = state.x
    s = state.samples
    d2 = second_derivative(s, h, order=order)
    with np.errstate(divide="ignore", invalid="ignore"):
        V = h_spec.potential(x)
        hf = -d2 + V * s - energy * s
    keep = np.ones(x.size, dtype=bool)
    m = max(stencil_margin(order), 2)
    keep[:m + 1] = False
    keep[-m:] = False
    keep &= np.isfinite(V) & (np.abs(x) >= (m + 1) * h - 1e-15)
    num = integrate(state.grid, np.where(keep, np.abs(hf) ** 2, 0.0))
    den = integrate(state.grid, np.where(keep, np.abs(s) ** 2, 0.0))
    return float(np.sqrt(num / den))


def centrifugal_ground(n_exp: int, x):
    """Generalized ground state |x|^n of -d^2/dx^2 + n(n-1)/x^2; vanishes with its slope at 0."""
    CentrifugalSpec(n_exp)
    return np.abs(np.asarray(x, dtype=float)) ** n_exp


def regularized_hamiltonian(spec: CalogeroSpec, x_max: float = X_MAX, n_points: int = REGULARIZED_POINTS):
    """Diagonal, off-diagonal and grid of the FD matrix for -u'' + (x^2 + gamma/(x^2+eps)) u
    on (-x_max, x_max) with Dirichlet ends. An even point count keeps x = 0 off the grid."""
    x = np.linspace(-x_max, x_max, n_points + 2)[1:-1]
    h = x[1] - x[0]
    with np.errstate(divide="ignore"):
        V = spec.potential(x)
    diag = 2.0 / h**2 + V
    off = np.full(x.size - 1, -1.0 / h**2)
    return diag, off, x


def regularized_spectrum(spec: CalogeroSpec, n_states: int, x_max: float = X_MAX,
                         n_points: int = REGULARIZED_POINTS) -> list[float]:
    """Lowest eigenvalues of the regularized Calogero Hamiltonian (tridiagonal FD)."""
    if not spec.epsilon > 0:
        raise InvalidArgument("regularized spectrum needs epsilon > 0")
    if n_states < 1:
        raise InvalidArgument("n_states must be >= 1")
    diag, off, _ = regularized_hamiltonian(spec, x_max, n_points)
    vals = eigh_tridiagonal(diag, off, eigvals_only=True, select="i", select_range=(0, n_states - 1))
    return [float(v) for v in vals]


def regularized_states(spec: CalogeroSpec, n_states: int, x_max: float = X_MAX,
                       n_points: int = REGULARIZED_POINTS):
    """Eigenvalues, eigenvectors (columns) and grid, plus each vector's matrix residual."""
    diag, off, x = regularized_hamiltonian(spec, x_max, n_points)
    vals, vecs = eigh_tridiagonal(diag, off, select="i", select_range=(0, n_states - 1))
    hv = diag[:, None] * vecs
    hv[:-1] += off[:, None] * vecs[1:]
    hv[1:] += off[:, None] * vecs[:-1]
    res = np.linalg.norm(hv - vals * vecs, axis=0) / np.linalg.norm(vecs, axis=0)
    return vals, vecs, x, res


def calogero_line_basis(spec: CalogeroSpec, grid: Grid, per_branch: int = 20):
    """Degenerate left/right eigenpairs of the singular Calogero model on a symmetric grid."""
    energies, modes = [], []
    for branch in ("right", "left"):
        for n in range(per_branch):
            st = calogero_eigenstate(n, spec, branch)
            energies.append(st.energy)
            modes.append(st(grid.x))
    return np.array(energies), np.array(modes, dtype=complex)


@dataclass(frozen=True)
class HalfLineRow:
    t: float
    P_plus: float
    P_minus: float
    current_at_origin: float


def half_line_invariance(spec: CalogeroSpec, initial: WaveFunction, times,
                         per_branch: int = 20) -> list[HalfLineRow]:
    """Evolve a state straddling the origin and track the semi-axis probabilities
    and the current through x = 0."""
    if spec.gamma < 0.75:
        raise UnsupportedRange("the barrier decouples the half-lines only for gamma >= 3/4")
    if spec.epsilon != 0:
        raise UnsupportedForRegularized("half-line decoupling is a property of the singular model")
    grid = initial.grid
    if grid.index_of(0.0) is None:
        raise InvalidArgument("the grid must contain x = 0")
    energies, modes = calogero_line_basis(spec, grid, per_branch)
    result = evolve(expand(initial, energies, modes), times)
    x = grid.x
    rows = []
    for t, snap in zip(result.times, result.snapshots):
        dens = snap.density
        plus = float(integrate(grid, np.where(x > 0, dens, 0.0)))
        minus = float(integrate(grid, np.where(x < 0, dens, 0.0)))
        rows.append(HalfLineRow(float(t), plus, minus, probability_current(snap, 0.0)))
    return rows
