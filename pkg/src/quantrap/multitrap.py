"""Multi-trap Hamiltonian H_q = -d^2/dx^2 - q^2 with Dirichlet nodes at k pi / q.

Each segment [(m-1) pi/q, m pi/q] carries a copy of the infinite well of width pi/q.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import Grid, WaveFunction
from .errors import InvalidArgument, PreconditionViolated
from .spectral import DEFAULT_MODES, evolve, expand

LEAK_TOL = 1e-12


@dataclass(frozen=True)
class MultiTrapSpec:
    q: float
    m: int = 1

    def __post_init__(self):
        if not (np.isfinite(self.q) and self.q > 0):
            raise InvalidArgument(f"q must be positive, got {self.q}")
        if int(self.m) != self.m:
            raise InvalidArgument("segment index must be an integer")

    @property
    def left(self) -> float:
        return (self.m - 1) * np.pi / self.q

    @property
    def right(self) -> float:
        return self.m * np.pi / self.q

    @property
    def width(self) -> float:
        return np.pi / self.q

    def mode(self, n: int, x):
        x = np.asarray(x, dtype=float)
        inside = (x >= self.left) & (x <= self.right)
        vals = np.sqrt(2.0 / self.width) * np.sin(n * self.q * (x - self.left))
        return np.where(inside, vals, 0.0)

    def grid(self, n_points: int = 4001) -> Grid:
        """Grid on the segment padded by half a width each side; the walls are nodes."""
        pad = self.width / 2
        return Grid.over(self.left - pad, self.right + pad, n_points)


def segment_energy(n: int, q: float) -> float:
    """Infinite-well level n of a width-pi/q segment: n^2 q^2."""
    if n < 1:
        raise InvalidArgument("n must be >= 1")
    if not q > 0:
        raise InvalidArgument("q must be positive")
    return float(n * n) * q * q


def segment_modes(spec: MultiTrapSpec, grid: Grid, n_modes: int = DEFAULT_MODES):
    """H_q eigenvalues n^2 q^2 - q^2 and the segment modes sampled on ``grid``."""
    ns = np.arange(1, n_modes + 1)
    energies = np.array([segment_energy(int(n), spec.q) for n in ns]) - spec.q**2
    modes = np.array([spec.mode(int(n), grid.x) for n in ns], dtype=complex)
    return energies, modes


def segment_confinement_check(spec: MultiTrapSpec, initial: WaveFunction, times,
                              n_modes: int = DEFAULT_MODES) -> list[tuple[float, float]]:
    """Rows (t, P_in_segment) for the eigenbasis evolution of ``initial``."""
    if n_modes > DEFAULT_MODES:
        raise InvalidArgument(f"at most {DEFAULT_MODES} segment modes")
    total = initial.norm_sq()
    if initial.mass_outside(spec.left, spec.right) > LEAK_TOL * total:
        raise PreconditionViolated("initial state is not supported by the segment")
    energies, modes = segment_modes(spec, initial.grid, n_modes)
    result = evolve(expand(initial, energies, modes), times)
    rows = []
    for t, snap in zip(result.times, result.snapshots):
        full = snap.norm_sq()
        inside = full - snap.mass_outside(spec.left, spec.right)
        rows.append((float(t), inside / full))
    return rows
