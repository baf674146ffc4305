"""Deficiency indices of -i d/dx and -d^2/dx^2 on bounded intervals, half-lines and the line.

Index labelling: ``m`` counts square-integrable solutions of (A* + i) g = 0 and
``n`` those of (A* - i) g = 0. With this labelling the first-order operator on
[0, inf) has (m, n) = (0, 1): exp(x) is lost, exp(-x) survives.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import simpson

from .core import Bounded, FullLine, HalfLine, IntervalSpec
from .errors import InvalidArgument

FIRST_ORDER = "FirstOrder"
SECOND_ORDER = "SecondOrder"

NUMERIC_REACH = 50.0
NUMERIC_MID = 25.0
DECAY_RATIO = 1e-6
NUMERIC_POINTS = 5001


@dataclass(frozen=True)
class DeficiencySolution:
    """One exponential solution exp(omega x) of (A* -+ i) g = 0."""

    space: str  # "M" or "N"
    omega: complex
    analytic_member: bool
    numeric_member: bool
    numeric_norm_sq: float


@dataclass(frozen=True)
class DeficiencyReport:
    expression: str
    interval: IntervalSpec
    m: int
    n: int
    solutions: tuple[DeficiencySolution, ...]

    @property
    def verdict(self) -> str:
        if self.m == self.n == 0:
            return "EssentiallySelfAdjoint"
        if self.m == self.n:
            return f"ExtensionFamily({self.m})"
        return "NoExtension"

    @property
    def family_dimension(self) -> int | None:
        return self.m if self.m == self.n and self.m > 0 else None

    @property
    def numeric_agrees(self) -> bool:
        return all(s.analytic_member == s.numeric_member for s in self.solutions)


def deficiency_exponents(expression: str) -> dict[str, list[complex]]:
    """Exponents omega with exp(omega x) solving (A* + i) g = 0 (space M) and (A* - i) g = 0 (space N)."""
    if expression == FIRST_ORDER:
        # -i g' + i g = 0 -> g' = g ;  -i g' - i g = 0 -> g' = -g
        return {"M": [1.0 + 0j], "N": [-1.0 + 0j]}
    if expression == SECOND_ORDER:
        # -g'' + i g = 0 -> g'' = i g ;  -g'' - i g = 0 -> g'' = -i g
        wm = cmath.sqrt(1j)
        wn = cmath.sqrt(-1j)
        return {"M": [wm, -wm], "N": [wn, -wn]}
    raise InvalidArgument(f"unknown expression {expression!r}")


def _analytic_member(omega: complex, interval: IntervalSpec) -> bool:
    if isinstance(interval, Bounded):
        return True
    if isinstance(interval, HalfLine):
        return interval.direction * omega.real < 0
    return False


def _numeric_norm_sq(omega: complex, interval: IntervalSpec) -> tuple[bool, float]:
    """Quadrature of |exp(omega x)|^2 over the interval, truncated at NUMERIC_REACH
    with a geometric tail estimate where the tail decays."""
    rate = 2.0 * omega.real
    if isinstance(interval, Bounded):
        x = np.linspace(interval.a, interval.b, NUMERIC_POINTS)
        return True, float(simpson(np.exp(rate * x), x=x))

    def one_side(direction: int, origin: float) -> tuple[bool, float]:
        s = np.linspace(0.0, NUMERIC_REACH, NUMERIC_POINTS)
        log_dens = rate * (origin + direction * s)
        ref = rate * origin
        ratio = math.exp(rate * direction * (NUMERIC_REACH - NUMERIC_MID))
        if not ratio < DECAY_RATIO:
            return False, math.inf
        body = float(simpson(np.exp(log_dens - ref), x=s)) * math.exp(ref)
        decay = -math.log(ratio) / (NUMERIC_REACH - NUMERIC_MID)
        tail = math.exp(log_dens[-1]) / decay
        return True, body + tail

    if isinstance(interval, HalfLine):
        return one_side(interval.direction, interval.origin)
    ok_r, right = one_side(1, 0.0)
    ok_l, left = one_side(-1, 0.0)
    if ok_r and ok_l:
        return True, right + left
    return False, math.inf


def classify(expression: str, interval: IntervalSpec) -> DeficiencyReport:
    exps = deficiency_exponents(expression)
    sols = []
    for space in ("M", "N"):
        for w in exps[space]:
            num_ok, norm_sq = _numeric_norm_sq(w, interval)
            sols.append(DeficiencySolution(space, w, _analytic_member(w, interval), num_ok, norm_sq))
    m = sum(1 for s in sols if s.space == "M" and s.analytic_member)
    n = sum(1 for s in sols if s.space == "N" and s.analytic_member)
    return DeficiencyReport(expression, interval, m, n, tuple(sols))


@dataclass(frozen=True)
class ExtensionFamilySize:
    group: str
    real_dimension: int
    description: str


def extension_family_size(report: DeficiencyReport) -> ExtensionFamilySize:
    """Self-adjoint extensions correspond one-to-one with U(k) for indices (k, k)."""
    k = report.family_dimension
    if k is None:
        raise InvalidArgument(f"no extension family for verdict {report.verdict}")
    if k == 1:
        desc = "circle of boundary phases exp(i alpha)"
    else:
        desc = f"unitary {k}x{k} matrices"
    return ExtensionFamilySize(f"U({k})", k * k, desc)


STANDARD_CASES = (
    (FIRST_ORDER, Bounded(0.0, math.pi)),
    (FIRST_ORDER, HalfLine(0.0, 1)),
    (SECOND_ORDER, Bounded(0.0, math.pi)),
    (SECOND_ORDER, HalfLine(0.0, 1)),
    (FIRST_ORDER, FullLine()),
)


def standard_table() -> list[DeficiencyReport]:
    """The five textbook cases: both operators on [0, pi] and [0, inf), -i d/dx on the line."""
    return [classify(e, i) for e, i in STANDARD_CASES]
