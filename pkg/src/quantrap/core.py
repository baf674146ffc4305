"""Grids, intervals, sampled wave functions, quadrature and the full-line Fourier transform.

Units throughout: hbar = 1 and hbar^2/2m = 1, so Hamiltonians read -d^2/dx^2 + V.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Union

import numpy as np
from scipy.integrate import simpson, trapezoid
from scipy.interpolate import CubicSpline

from .errors import GridMismatch, InvalidArgument

DEFAULT_GRID_POINTS = 2001
DEFAULT_P_MAX = 60.0
DEFAULT_P_POINTS = 1201

_FT_CHUNK = 512


@dataclass(frozen=True)
class Bounded:
    """Closed interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self):
        if not (np.isfinite(self.a) and np.isfinite(self.b)) or not self.a < self.b:
            raise InvalidArgument(f"bounded interval needs finite a < b, got ({self.a}, {self.b})")

    @property
    def length(self) -> float:
        return self.b - self.a

    def indicator(self, x):
        x = np.asarray(x, dtype=float)
        return ((x >= self.a) & (x <= self.b)).astype(float)

    def describe(self) -> str:
        return f"bounded({self.a:g},{self.b:g})"


@dataclass(frozen=True)
class HalfLine:
    """[origin, +inf) for direction +1, (-inf, origin] for direction -1."""

    origin: float = 0.0
    direction: int = 1

    def __post_init__(self):
        if self.direction not in (1, -1):
            raise InvalidArgument("half-line direction must be +1 or -1")

    def indicator(self, x):
        x = np.asarray(x, dtype=float)
        return (self.direction * (x - self.origin) >= 0).astype(float)

    def describe(self) -> str:
        sign = "+" if self.direction > 0 else "-"
        return f"half-line({self.origin:g},{sign})"


@dataclass(frozen=True)
class FullLine:
    def indicator(self, x):
        return np.ones_like(np.asarray(x, dtype=float))

    def describe(self) -> str:
        return "full-line"


IntervalSpec = Union[Bounded, HalfLine, FullLine]


@dataclass(frozen=True)
class Grid:
    """Uniform grid on a bounded interval, endpoints included.

    ``n_points`` is rounded up to the next odd integer so composite Simpson
    applies without a trailing trapezoid panel.
    """

    interval: Bounded
    n_points: int = DEFAULT_GRID_POINTS

    def __post_init__(self):
        if not isinstance(self.interval, Bounded):
            raise InvalidArgument("only bounded intervals can be sampled")
        n = int(self.n_points)
        if n < 3:
            raise InvalidArgument(f"a grid needs at least 3 points, got {n}")
        if n % 2 == 0:
            n += 1
        object.__setattr__(self, "n_points", n)

    @classmethod
    def over(cls, a: float, b: float, n_points: int = DEFAULT_GRID_POINTS) -> "Grid":
        return cls(Bounded(a, b), n_points)

    @property
    def a(self) -> float:
        return self.interval.a

    @property
    def b(self) -> float:
        return self.interval.b

    @property
    def spacing(self) -> float:
        return (self.b - self.a) / (self.n_points - 1)

    @cached_property
    def x(self) -> np.ndarray:
        pts = np.linspace(self.a, self.b, self.n_points)
        pts.flags.writeable = False
        return pts

    def index_of(self, x0: float, tol: float = 1e-9) -> int | None:
        """Index of the grid node at x0, or None when x0 falls between nodes."""
        s = (x0 - self.a) / self.spacing
        i = int(round(s))
        if 0 <= i < self.n_points and abs(s - i) <= tol:
            return i
        return None


@dataclass(frozen=True, eq=False)
class WaveFunction:
    """Complex samples of a function on a uniform grid."""

    grid: Grid
    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        if s.shape != (self.grid.n_points,):
            raise InvalidArgument(
                f"expected {self.grid.n_points} samples, got shape {s.shape}"
            )
        object.__setattr__(self, "samples", s)

    @classmethod
    def from_function(cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]) -> "WaveFunction":
        return cls(grid, np.asarray(func(grid.x), dtype=complex))

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.samples) ** 2

    def norm_sq(self) -> float:
        return float(integrate(self.grid, self.density))

    def norm(self) -> float:
        return float(np.sqrt(self.norm_sq()))

    def normalized(self) -> "WaveFunction":
        nrm = self.norm()
        if nrm == 0.0:
            raise InvalidArgument("cannot normalize the zero function")
        return WaveFunction(self.grid, self.samples / nrm)

    def scaled(self, factor: complex) -> "WaveFunction":
        return WaveFunction(self.grid, self.samples * factor)

    def mass_outside(self, a: float, b: float) -> float:
        """Quadrature of |f|^2 over grid points strictly outside [a, b]."""
        x = self.x
        tol = 1e-12 * max(1.0, abs(a), abs(b))
        outside = (x < a - tol) | (x > b + tol)
        return float(integrate(self.grid, np.where(outside, self.density, 0.0)))

    def is_supported_by(self, a: float, b: float, tol: float = 0.0) -> bool:
        x = self.x
        eps = 1e-12 * max(1.0, abs(a), abs(b))
        outside = (x < a - eps) | (x > b + eps)
        return bool(np.all(np.abs(self.samples[outside]) <= tol))


@dataclass(frozen=True, eq=False)
class MomentumDistribution:
    p_grid: np.ndarray
    amplitude: np.ndarray

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.amplitude) ** 2

    def total(self) -> float:
        return float(simpson(self.density, x=self.p_grid))


def default_p_grid(p_max: float = DEFAULT_P_MAX, n_points: int = DEFAULT_P_POINTS) -> np.ndarray:
    return np.linspace(-p_max, p_max, n_points)


def integrate(grid: Grid, values: np.ndarray, axis: int = -1):
    """Composite Simpson on the grid's uniform spacing."""
    return simpson(values, dx=grid.spacing, axis=axis)


def integrate_between(x: np.ndarray, y: np.ndarray, lo: float, hi: float) -> float:
    """Integral of sampled y over [lo, hi], clipped to the sample range.

    Grid-aligned limits use Simpson on the slice; otherwise a cubic spline
    through the samples is integrated exactly.
    """
    lo = max(lo, float(x[0]))
    hi = min(hi, float(x[-1]))
    if hi <= lo:
        return 0.0
    h = x[1] - x[0]
    s_lo, s_hi = (lo - x[0]) / h, (hi - x[0]) / h
    i, j = int(round(s_lo)), int(round(s_hi))
    if abs(s_lo - i) < 1e-9 and abs(s_hi - j) < 1e-9:
        if j - i < 2:
            return float(trapezoid(y[i : j + 1], dx=h))
        return float(simpson(y[i : j + 1], dx=h))
    return float(CubicSpline(x, y).integrate(lo, hi))


def _check_same_grid(f: WaveFunction, g: WaveFunction) -> None:
    if f.grid != g.grid:
        raise GridMismatch(f"grids differ: {f.grid} vs {g.grid}")


def inner_product(f: WaveFunction, g: WaveFunction) -> complex:
    """Simpson approximation of the integral of conj(f) * g."""
    _check_same_grid(f, g)
    return complex(integrate(f.grid, np.conj(f.samples) * g.samples))


def l2_distance(f: WaveFunction, g: WaveFunction) -> float:
    _check_same_grid(f, g)
    diff = f.samples - g.samples
    val = float(integrate(f.grid, np.abs(diff) ** 2))
    return float(np.sqrt(max(val, 0.0)))


def fourier_transform(f: WaveFunction, p_grid) -> MomentumDistribution:
    """phi(p) = (2 pi)^(-1/2) * integral exp(-i p x) f(x) dx by direct quadrature.

    f is treated as zero outside its grid (compact support).
    """
    p = np.atleast_1d(np.asarray(p_grid, dtype=float))
    if p.size == 0:
        raise InvalidArgument("empty momentum grid")
    x = f.x
    amp = np.empty(p.size, dtype=complex)
    for start in range(0, p.size, _FT_CHUNK):
        chunk = p[start : start + _FT_CHUNK]
        kernel = np.exp(-1j * np.outer(chunk, x)) * f.samples
        amp[start : start + chunk.size] = integrate(f.grid, kernel, axis=1)
    amp /= np.sqrt(2.0 * np.pi)
    return MomentumDistribution(p, amp)


def first_derivative(samples: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    """Centered finite-difference d/dx. Edge entries (1 or 2 per side) are zero."""
    y = np.asarray(samples)
    out = np.zeros_like(y)
    if order == 2:
        out[1:-1] = (y[2:] - y[:-2]) / (2 * h)
    elif order == 4:
        out[2:-2] = (-y[4:] + 8 * y[3:-1] - 8 * y[1:-3] + y[:-4]) / (12 * h)
    else:
        raise InvalidArgument("order must be 2 or 4")
    return out


def second_derivative(samples: np.ndarray, h: float, order: int = 2) -> np.ndarray:
    """Centered finite-difference d^2/dx^2. Edge entries (1 or 2 per side) are zero."""
    y = np.asarray(samples)
    out = np.zeros_like(y)
    if order == 2:
        out[1:-1] = (y[2:] - 2 * y[1:-1] + y[:-2]) / h**2
    elif order == 4:
        out[2:-2] = (-y[4:] + 16 * y[3:-1] - 30 * y[2:-2] + 16 * y[1:-3] - y[:-4]) / (12 * h**2)
    else:
        raise InvalidArgument("order must be 2 or 4")
    return out


def stencil_margin(order: int) -> int:
    return 1 if order == 2 else 2
