"""Dirichlet well H_w on [0, pi]: eigenpairs, momentum densities, localization probabilities.

Eigenstates are functions on the whole line, supported by [0, pi].
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_GRID_POINTS,
    Grid,
    MomentumDistribution,
    WaveFunction,
    default_p_grid,
    fourier_transform,
    integrate_between,
)
from .errors import InvalidArgument, OutOfRange

WELL_LEFT = 0.0
WELL_RIGHT = np.pi

_SMALL_ARG = 1e-6


def exp_integral(a, length: float = np.pi):
    """Integral of exp(i a x) over [0, length], with the a -> 0 limit handled."""
    a = np.asarray(a, dtype=complex)
    small = np.abs(a) < _SMALL_ARG
    safe = np.where(small, 1.0, a)
    exact = (np.exp(1j * safe * length) - 1.0) / (1j * safe)
    series = length + 0.5j * a * length**2 - a**2 * length**3 / 6.0
    return np.where(small, series, exact)


def _check_index(n: int) -> int:
    if int(n) != n or n < 1:
        raise InvalidArgument(f"well states are labelled by n >= 1, got {n}")
    return int(n)


def well_energy(n: int) -> float:
    n = _check_index(n)
    return float(n * n)


@dataclass(frozen=True)
class WellEigenstate:
    n: int

    def __post_init__(self):
        _check_index(self.n)

    @property
    def energy(self) -> float:
        return well_energy(self.n)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= WELL_LEFT) & (x <= WELL_RIGHT)
        vals = np.sqrt(2.0 / np.pi) * np.sin(self.n * x)
        vals = np.where(inside, vals, 0.0)
        # sin(n pi) is not exactly zero in floating point
        return np.where((x == WELL_LEFT) | (x == WELL_RIGHT), 0.0, vals)

    def sample(self, grid: Grid | None = None) -> WaveFunction:
        if grid is None:
            grid = Grid.over(WELL_LEFT, WELL_RIGHT, DEFAULT_GRID_POINTS)
        return WaveFunction(grid, self(grid.x).astype(complex))

    def momentum_amplitude(self, p) -> np.ndarray:
        """Closed-form Fourier transform of the extended-by-zero eigenstate."""
        p = np.asarray(p, dtype=float)
        n = self.n
        integral = (exp_integral(n - p) - exp_integral(-n - p)) / 2j
        return np.sqrt(2.0 / np.pi) * integral / np.sqrt(2.0 * np.pi)


def well_eigenstate(n: int) -> WellEigenstate:
    return WellEigenstate(_check_index(n))


def well_momentum_density(n: int, p_grid=None, grid: Grid | None = None) -> MomentumDistribution:
    """Fourier transform of psi_n by direct quadrature on ``grid`` (default [0, pi], 2001 points)."""
    state = well_eigenstate(n)
    if p_grid is None:
        p_grid = default_p_grid()
    return fourier_transform(state.sample(grid), p_grid)


def localization_probability(f: WaveFunction, x1: float, x2: float) -> float:
    """Integral of |f|^2 over [x1, x2] clipped to the grid."""
    if not x1 < x2:
        raise InvalidArgument(f"need x1 < x2, got ({x1}, {x2})")
    return integrate_between(f.x, f.density, x1, x2)


def momentum_probability(dist: MomentumDistribution, p1: float, p2: float) -> float:
    if not p1 < p2:
        raise InvalidArgument(f"need p1 < p2, got ({p1}, {p2})")
    p = dist.p_grid
    tol = 1e-9 * max(1.0, abs(p[0]), abs(p[-1]))
    if p1 < p[0] - tol or p2 > p[-1] + tol:
        raise OutOfRange(f"({p1}, {p2}) leaves the sampled range [{p[0]}, {p[-1]}]")
    return integrate_between(p, dist.density, p1, p2)
