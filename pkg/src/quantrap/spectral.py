"""Exact eigenbasis propagation exp(-iHt) = sum_k exp(-i E_k t) Q_k, and the probability current."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid, WaveFunction, first_derivative, integrate
from .errors import InvalidArgument, OutOfRange, UnfaithfulExpansion

DEFAULT_MODES = 128
FAITHFUL_DEFICIT = 1e-6


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    """Eigenvalues, eigenmodes sampled on a grid (one row per mode) and a state's coefficients."""

    grid: Grid
    energies: np.ndarray
    modes: np.ndarray
    coefficients: np.ndarray
    initial_norm_sq: float

    @property
    def truncation(self) -> int:
        return self.energies.size

    @property
    def coefficient_mass(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))

    @property
    def deficit(self) -> float:
        return self.initial_norm_sq - self.coefficient_mass

    @property
    def faithful(self) -> bool:
        return self.deficit <= FAITHFUL_DEFICIT * max(self.initial_norm_sq, 1.0)

    def state_at(self, t: float) -> WaveFunction:
        c = self.coefficients * np.exp(-1j * self.energies * t)
        return WaveFunction(self.grid, c @ self.modes)

    def with_state(self, f: WaveFunction) -> "SpectralDecomposition":
        """Same basis, coefficients of another state on the same grid."""
        return expand(f, self.energies, self.modes)


def expand(initial: WaveFunction, energies, modes) -> SpectralDecomposition:
    """Project ``initial`` onto sampled eigenmodes by quadrature."""
    energies = np.asarray(energies, dtype=float)
    modes = np.asarray(modes, dtype=complex)
    if modes.shape != (energies.size, initial.grid.n_points):
        raise InvalidArgument(
            f"modes must have shape ({energies.size}, {initial.grid.n_points}), got {modes.shape}"
        )
    coeffs = integrate(initial.grid, np.conj(modes) * initial.samples, axis=1)
    return SpectralDecomposition(initial.grid, energies, modes, coeffs, initial.norm_sq())


@dataclass(frozen=True, eq=False)
class EvolutionResult:
    times: np.ndarray
    snapshots: list[WaveFunction]
    norms: np.ndarray
    autocorrelation: np.ndarray


def evolve(decomp: SpectralDecomposition, times) -> EvolutionResult:
    if not decomp.faithful:
        raise UnfaithfulExpansion(decomp.deficit, FAITHFUL_DEFICIT)
    times = np.atleast_1d(np.asarray(times, dtype=float))
    snaps = [decomp.state_at(t) for t in times]
    norms = np.array([s.norm() for s in snaps])
    weights = np.abs(decomp.coefficients) ** 2
    auto = np.abs(np.exp(-1j * np.outer(times, decomp.energies)) @ weights) / np.sum(weights)
    return EvolutionResult(times, snaps, norms, auto)


def probability_current(f: WaveFunction, x0: float) -> float:
    """j(x0) = 2 Im(conj(f) f') with a centered difference, for H = -d^2/dx^2 + V."""
    i = f.grid.index_of(x0)
    if i is None:
        raise OutOfRange(f"x0 = {x0} is not a grid point")
    if i == 0 or i == f.grid.n_points - 1:
        raise OutOfRange("probability current needs an interior grid point")
    d = first_derivative(f.samples, f.grid.spacing, order=2)
    return float(2.0 * np.imag(np.conj(f.samples[i]) * d[i]))
