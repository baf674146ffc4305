"""Model descriptions, their eigenbases, and confinement checks under exact evolution.

A trap region G-bar is invariant when the Hamiltonian splits as a direct sum
across its boundary; numerically that shows up as zero mass leaking out of
G-bar under exp(-iHt).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .core import Grid, WaveFunction
from .errors import InvalidArgument, PreconditionViolated, UnsupportedRange
from .extension import AlphaBasisState, reduce_alpha
from .multitrap import MultiTrapSpec, segment_modes
from .singular import X_MAX, CalogeroSpec, calogero_line_basis
from .spectral import (
    DEFAULT_MODES,
    EvolutionResult,
    SpectralDecomposition,
    evolve,
    expand,
    probability_current,
)

CONFINED_TOL = 1e-9
SUPPORT_TOL = 1e-12
CALOGERO_MODES = 40

__all__ = [
    "CalogeroModel",
    "CentrifugalModel",
    "ConfinementVerdict",
    "EvolutionResult",
    "ExtensionFamilyModel",
    "FiniteWellModel",
    "InfiniteWellModel",
    "ModelSpec",
    "MultiTrapModel",
    "SpectralDecomposition",
    "confinement_verdict",
    "decompose",
    "evolve",
    "expand",
    "model_basis",
    "model_grid",
    "model_region",
    "probability_current",
]


@dataclass(frozen=True)
class ExtensionFamilyModel:
    alpha: float = 0.0


@dataclass(frozen=True)
class InfiniteWellModel:
    pass


@dataclass(frozen=True)
class FiniteWellModel:
    v0: float


@dataclass(frozen=True)
class CentrifugalModel:
    n_exp: int = 2


@dataclass(frozen=True)
class CalogeroModel:
    gamma: float
    epsilon: float = 0.0


@dataclass(frozen=True)
class MultiTrapModel:
    q: float
    m: int = 1


ModelSpec = Union[
    ExtensionFamilyModel,
    InfiniteWellModel,
    FiniteWellModel,
    CentrifugalModel,
    CalogeroModel,
    MultiTrapModel,
]


def model_region(model: ModelSpec) -> tuple[float, float]:
    """Closed trap region G-bar. The Calogero right half-line is cut at X_MAX."""
    if isinstance(model, (ExtensionFamilyModel, InfiniteWellModel)):
        return 0.0, float(np.pi)
    if isinstance(model, MultiTrapModel):
        seg = MultiTrapSpec(model.q, model.m)
        return seg.left, seg.right
    if isinstance(model, CalogeroModel):
        return 0.0, X_MAX
    raise InvalidArgument(f"{type(model).__name__} has no trap region with a discrete eigenbasis")


def model_grid(model: ModelSpec, n_points: int | None = None) -> Grid:
    """Working grid. Trap walls always fall on grid nodes."""
    if isinstance(model, ExtensionFamilyModel):
        return Grid.over(0.0, np.pi, n_points or 2001)
    if isinstance(model, InfiniteWellModel):
        return Grid.over(-np.pi / 2, 3 * np.pi / 2, n_points or 4001)
    if isinstance(model, MultiTrapModel):
        return MultiTrapSpec(model.q, model.m).grid(n_points or 4001)
    if isinstance(model, CalogeroModel):
        return Grid.over(-X_MAX, X_MAX, n_points or 8001)
    raise InvalidArgument(f"{type(model).__name__} has no discrete eigenbasis")


def model_basis(model: ModelSpec, grid: Grid, n_modes: int | None = None):
    """(energies, modes) with one sampled mode per row."""
    if isinstance(model, ExtensionFamilyModel):
        if abs(grid.a) > 1e-12 or abs(grid.b - np.pi) > 1e-12:
            raise InvalidArgument("extension-family states live on [0, pi]")
        K = n_modes or DEFAULT_MODES
        alpha = reduce_alpha(model.alpha)
        ns = np.arange(-(K // 2), K - K // 2)
        states = [AlphaBasisState(int(n), alpha) for n in ns]
        return np.array([s.energy for s in states]), np.array([s(grid.x) for s in states])
    if isinstance(model, InfiniteWellModel):
        energies, modes = segment_modes(MultiTrapSpec(1.0, 1), grid, n_modes or DEFAULT_MODES)
        return energies + 1.0, modes
    if isinstance(model, MultiTrapModel):
        return segment_modes(MultiTrapSpec(model.q, model.m), grid, n_modes or DEFAULT_MODES)
    if isinstance(model, CalogeroModel):
        if model.epsilon != 0:
            raise InvalidArgument("eigenbasis evolution needs the singular model (epsilon = 0)")
        if model.gamma < 0.75:
            raise UnsupportedRange("half-lines decouple only for gamma >= 3/4")
        return calogero_line_basis(CalogeroSpec(model.gamma), grid, (n_modes or CALOGERO_MODES) // 2)
    raise InvalidArgument(f"{type(model).__name__} has no discrete eigenbasis to evolve in")


def decompose(model: ModelSpec, initial: WaveFunction, n_modes: int | None = None) -> SpectralDecomposition:
    energies, modes = model_basis(model, initial.grid, n_modes)
    return expand(initial, energies, modes)


@dataclass(frozen=True)
class ConfinementVerdict:
    confined: bool
    max_leak: float


def confinement_verdict(model: ModelSpec, trials: Sequence[WaveFunction], times,
                        n_modes: int | None = None) -> ConfinementVerdict:
    """Evolve every trial and record the largest mass found outside G-bar."""
    a, b = model_region(model)
    max_leak = 0.0
    for f in trials:
        total = f.norm_sq()
        if f.mass_outside(a, b) > SUPPORT_TOL * total:
            raise PreconditionViolated("trial state is not supported in the trap region")
        result = evolve(decompose(model, f, n_modes), times)
        for snap in result.snapshots:
            max_leak = max(max_leak, snap.mass_outside(a, b) / total)
    return ConfinementVerdict(max_leak <= CONFINED_TOL, max_leak)
