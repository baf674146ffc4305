"""Finite square well V = 0 on (0, pi), V0 outside: bound states and the V0 -> infinity limit."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import simpson

from .core import Grid, WaveFunction, default_p_grid, integrate, l2_distance
from .errors import InvalidArgument
from .infinite_well import WellEigenstate, exp_integral

CENTER = np.pi / 2
SUB_BRACKETS = 64
K_TOL = 1e-13


@dataclass(frozen=True)
class FiniteWellSpec:
    v0: float

    def __post_init__(self):
        if not (np.isfinite(self.v0) and self.v0 > 0):
            raise InvalidArgument(f"barrier height must be positive, got {self.v0}")


@dataclass(frozen=True)
class BoundState:
    """Normalized bound state of the finite well.

    Inside: A cos(k (x - pi/2)) (even) or A sin(k (x - pi/2)) (odd); outside
    the values at the walls decay as exp(-kappa * distance). The overall sign
    is fixed so that the state tends to +sqrt(2/pi) sin(n x).
    """

    n: int
    v0: float
    k: float
    parity: str
    amplitude: float = field(repr=False)

    @property
    def energy(self) -> float:
        return self.k * self.k

    @property
    def kappa(self) -> float:
        return math.sqrt(max(self.v0 - self.energy, 0.0))

    def _inside(self, x):
        arg = self.k * (np.asarray(x, dtype=float) - CENTER)
        return self.amplitude * (np.cos(arg) if self.parity == "even" else np.sin(arg))

    def _inside_slope(self, x):
        arg = self.k * (np.asarray(x, dtype=float) - CENTER)
        if self.parity == "even":
            return -self.amplitude * self.k * np.sin(arg)
        return self.amplitude * self.k * np.cos(arg)

    @property
    def left_value(self) -> float:
        return float(self._inside(0.0))

    @property
    def right_value(self) -> float:
        return float(self._inside(np.pi))

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        kap = self.kappa
        left = self.left_value * np.exp(kap * np.minimum(x, 0.0))
        right = self.right_value * np.exp(-kap * np.maximum(x - np.pi, 0.0))
        return np.where(x < 0.0, left, np.where(x > np.pi, right, self._inside(x)))

    def sample(self, grid: Grid) -> WaveFunction:
        return WaveFunction(grid, self(grid.x).astype(complex))

    def tail_mass(self) -> float:
        return (self.left_value**2 + self.right_value**2) / (2.0 * self.kappa)

    def norm_sq(self) -> float:
        k, A = self.k, self.amplitude
        sign = 1.0 if self.parity == "even" else -1.0
        inside = A * A * (np.pi / 2 + sign * math.sin(k * np.pi) / (2 * k))
        return inside + self.tail_mass()

    def matching_residual(self) -> float:
        """Largest relative mismatch of the logarithmic derivative at the two walls."""
        kap = self.kappa
        left = self._inside_slope(0.0) / self._inside(0.0)
        right = self._inside_slope(np.pi) / self._inside(np.pi)
        return float(max(abs(left - kap), abs(right + kap)) / kap)

    def momentum_amplitude(self, p) -> np.ndarray:
        """Closed-form Fourier transform over the whole line, tails included."""
        p = np.asarray(p, dtype=float)
        k, kap, A = self.k, self.kappa, self.amplitude
        ph = np.exp(-1j * k * CENTER)
        plus, minus = exp_integral(k - p), exp_integral(-k - p)
        if self.parity == "even":
            inside = 0.5 * A * (ph * plus + np.conj(ph) * minus)
        else:
            inside = A / 2j * (ph * plus - np.conj(ph) * minus)
        left = self.left_value / (kap - 1j * p)
        right = self.right_value * np.exp(-1j * p * np.pi) / (kap + 1j * p)
        return (left + inside + right) / np.sqrt(2.0 * np.pi)


def _limit_sign(n: int) -> float:
    # sin(n x) = s_n cos(n (x - pi/2)) for odd n, s_n sin(n (x - pi/2)) for even n
    return float((-1) ** ((n - 1) // 2)) if n % 2 else float((-1) ** (n // 2))


def _branch_function(parity: str, v0: float):
    half = np.pi / 2

    def even(k):
        return k * math.sin(k * half) - math.sqrt(max(v0 - k * k, 0.0)) * math.cos(k * half)

    def odd(k):
        return k * math.cos(k * half) + math.sqrt(max(v0 - k * k, 0.0)) * math.sin(k * half)

    return even if parity == "even" else odd


def _bisect(fn, lo: float, hi: float, f_lo: float) -> float:
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi) or hi - lo <= K_TOL * 1e-3:
            break
        f_mid = fn(mid)
        if f_mid == 0.0:
            return mid
        if (f_mid < 0) == (f_lo < 0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def _roots_on_branch(fn, lo: float, hi: float) -> list[float]:
    edges = np.linspace(lo, hi, SUB_BRACKETS + 1)
    vals = [fn(e) for e in edges]
    roots = []
    for i in range(SUB_BRACKETS):
        a, b = edges[i], edges[i + 1]
        fa, fb = vals[i], vals[i + 1]
        if fa == 0.0 and a > 0:
            roots.append(float(a))
        elif fa * fb < 0:
            roots.append(_bisect(fn, float(a), float(b), fa))
    return roots


def solve_bound_states(spec: FiniteWellSpec) -> list[BoundState]:
    """All bound states, ordered by energy.

    The matching conditions k tan(k pi/2) = kappa (even) and -k cot(k pi/2) = kappa
    (odd) are solved in the pole-free forms k sin - kappa cos = 0 and
    k cos + kappa sin = 0. Branch j lives on k in (j, j+1); even j carries the
    even states.
    """
    v0 = spec.v0
    kmax = math.sqrt(v0)
    found: list[tuple[float, str]] = []
    j = 0
    while j < kmax:
        parity = "even" if j % 2 == 0 else "odd"
        lo, hi = float(j), min(float(j + 1), kmax)
        fn = _branch_function(parity, v0)
        for k in _roots_on_branch(fn, lo, hi):
            if 0.0 < k < kmax:
                found.append((k, parity))
        j += 1
    found.sort()
    states = []
    for idx, (k, parity) in enumerate(found, start=1):
        trial = BoundState(idx, v0, k, parity, 1.0)
        amp = _limit_sign(idx) / math.sqrt(trial.norm_sq())
        states.append(BoundState(idx, v0, k, parity, amp))
    return states


def asymptotic_energy(n: int, v0: float) -> float:
    """Large-barrier estimate n^2 (1 - 4 / (pi sqrt(V0)))."""
    if n < 1 or v0 <= 0:
        raise InvalidArgument("need n >= 1 and v0 > 0")
    return n * n * (1.0 - 4.0 / (np.pi * math.sqrt(v0)))


def asymptotic_eigenfunction(n: int, v0: float, x):
    """First-order large-barrier eigenfunction: exponential tails, corrected sine inside.

    The right tail carries the sign (-1)^(n+1) of the limiting state's slope at x = pi.
    """
    if n < 1 or v0 <= 0:
        raise InvalidArgument("need n >= 1 and v0 > 0")
    x = np.asarray(x, dtype=float)
    root = math.sqrt(v0)
    c = math.sqrt(2.0 / np.pi)
    tail = c * n / root
    left = tail * np.exp(np.minimum(x, 0.0) * root)
    inside = c * (np.sin(n * x) + (n * np.pi * np.cos(n * x) - np.sin(n * x)) / (np.pi * root))
    right = (-1.0) ** (n + 1) * tail * np.exp(-np.maximum(x - np.pi, 0.0) * root)
    return np.where(x <= 0.0, left, np.where(x >= np.pi, right, inside))


@dataclass(frozen=True)
class ConvergenceRow:
    v0: float
    bound: bool
    E_solved: float = float("nan")
    E_asymptote: float = float("nan")
    l2_distance_to_limit: float = float("nan")
    momentum_density_max_gap: float = float("nan")


def distance_to_limit(state: BoundState, n_points: int = 4001) -> float:
    """||phi_n^V - phi_n^inf|| over the whole line.

    The interior is integrated by Simpson on [0, pi]; the limit state vanishes
    outside, so the tails contribute their analytic mass.
    """
    grid = Grid.over(0.0, np.pi, n_points)
    limit = WellEigenstate(state.n).sample(grid)
    inside = l2_distance(state.sample(grid), limit) ** 2
    return math.sqrt(inside + state.tail_mass())


def momentum_distance_to_limit(state: BoundState, p_max: float = 4000.0, n_points: int = 400001) -> float:
    """||F phi_n^V - F phi_n^inf|| over p in [-p_max, p_max], from closed-form transforms."""
    p = np.linspace(-p_max, p_max, n_points)
    gap = state.momentum_amplitude(p) - WellEigenstate(state.n).momentum_amplitude(p)
    return math.sqrt(simpson(np.abs(gap) ** 2, x=p))


def convergence_study(n: int, v0_list, p_grid=None) -> list[ConvergenceRow]:
    v0s = [float(v) for v in v0_list]
    if any(b <= a for a, b in zip(v0s, v0s[1:])):
        raise InvalidArgument("v0_list must be strictly increasing")
    if any(v <= 4 * n * n for v in v0s):
        raise InvalidArgument("each v0 must exceed 4 n^2 so the state sits well below the barrier")
    if p_grid is None:
        p_grid = default_p_grid()
    limit_density = np.abs(WellEigenstate(n).momentum_amplitude(p_grid)) ** 2
    rows = []
    for v0 in v0s:
        states = solve_bound_states(FiniteWellSpec(v0))
        if len(states) < n:
            rows.append(ConvergenceRow(v0, False))
            continue
        st = states[n - 1]
        gap = np.max(np.abs(np.abs(st.momentum_amplitude(p_grid)) ** 2 - limit_density))
        rows.append(
            ConvergenceRow(
                v0,
                True,
                st.energy,
                asymptotic_energy(n, v0),
                distance_to_limit(st),
                float(gap),
            )
        )
    return rows


def whole_line_norm_sq(state: BoundState, n_points: int = 4001) -> float:
    """Numerical norm: Simpson inside plus analytic tails."""
    grid = Grid.over(0.0, np.pi, n_points)
    return float(integrate(grid, np.abs(state(grid.x)) ** 2)) + state.tail_mass()
