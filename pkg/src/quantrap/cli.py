"""Command-line front end: builds a RunConfig, dispatches, writes CSV or JSON tables.

Exit codes: 0 success, 2 invalid configuration, 3 output not writable.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np

from . import deficiency as dfc
from .core import Bounded, FullLine, Grid, HalfLine, WaveFunction, default_p_grid, fourier_transform
from .errors import QuantrapError
from .evolution import (
    CalogeroModel,
    ExtensionFamilyModel,
    InfiniteWellModel,
    MultiTrapModel,
    decompose,
    evolve,
    model_basis,
    model_grid,
)
from .extension import energy_eigenvalue_alpha, momentum_eigenvalue
from .finite_well import (
    FiniteWellSpec,
    asymptotic_energy,
    convergence_study,
    distance_to_limit,
    solve_bound_states,
)
from .infinite_well import well_eigenstate
from .multitrap import MultiTrapSpec, segment_energy
from .singular import (
    CalogeroSpec,
    calogero_eigenstate,
    calogero_energy,
    radial_grid,
    regularized_states,
    residual,
)

COMMANDS = ("spectrum", "momentum", "finite-well", "evolve", "calogero", "multitrap", "deficiency", "convergence")
OUTPUT_ENV = "QUANTRAP_OUTPUT_DIR"

HEADERS = {
    "spectrum": ["n", "p", "E"],
    "momentum": ["p", "density"],
    "evolve": ["t", "x", "re", "im", "prob"],
    "finite-well": ["n", "v0", "E_solved", "E_asymptote", "l2_dist"],
    "convergence": ["n", "v0", "E_solved", "E_asymptote", "l2_dist", "momentum_gap", "bound"],
    "deficiency": ["expression", "interval", "m", "n", "verdict"],
    "calogero": ["n", "gamma", "E", "residual"],
    "multitrap": ["m", "n", "q", "E"],
}

INTERVALS = {
    "bounded": Bounded(0.0, math.pi),
    "half-line+": HalfLine(0.0, 1),
    "half-line-": HalfLine(0.0, -1),
    "full-line": FullLine(),
}


class ConfigError(Exception):
    """A parameter violates the receiving module's precondition."""


@dataclass
class RunConfig:
    command: str
    alpha: float = 0.0
    v0: float | None = None
    v0_list: list[float] = field(default_factory=lambda: [1e2, 1e3, 1e4])
    gamma: float = 2.0
    epsilon: float = 0.0
    q: float = 1.0
    m: int = 1
    n: int | None = None
    n_max: int = 5
    model: str = "well"
    grid_points: int | None = None
    p_max: float = 60.0
    p_points: int = 1201
    t_max: float = 2 * math.pi
    t_steps: int = 10
    expression: str | None = None
    interval: str | None = None
    all: bool = False
    output: str | None = None
    format: str = "csv"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ConfigError(message)


def validate(cfg: RunConfig) -> None:
    _require(cfg.command in COMMANDS, f"unknown command {cfg.command!r}")
    _require(cfg.format in ("csv", "json"), "format must be csv or json")
    _require(cfg.n_max >= 0, "n_max must be >= 0")
    _require(cfg.grid_points is None or cfg.grid_points >= 3, "grid_points must be >= 3")
    _require(cfg.p_max > 0 and cfg.p_points >= 3, "need p_max > 0 and p_points >= 3")
    _require(cfg.t_steps >= 1, "t_steps must be >= 1")
    if cfg.n is not None:
        _require(cfg.n >= 0 if cfg.command == "calogero" else cfg.n >= 1, "n must be >= 1")
    if cfg.command in ("finite-well",) or (cfg.command == "momentum" and cfg.v0 is not None):
        _require(cfg.v0 is not None and cfg.v0 > 0, "v0 must be > 0")
    if cfg.command == "convergence":
        n = cfg.n or 1
        _require(len(cfg.v0_list) > 0, "v0_list must not be empty")
        _require(all(b > a for a, b in zip(cfg.v0_list, cfg.v0_list[1:])), "v0_list must be increasing")
        _require(all(v > 4 * n * n for v in cfg.v0_list), "each v0 must exceed 4 n^2")
    if cfg.command in ("calogero",) or (cfg.command == "evolve" and cfg.model == "calogero"):
        _require(cfg.gamma > -0.25, "gamma must be > -1/4")
        _require(cfg.epsilon >= 0, "epsilon must be >= 0")
    if cfg.command == "evolve":
        _require(cfg.model in ("well", "alpha", "multitrap", "calogero"), "model must be well, alpha, multitrap or calogero")
        if cfg.model == "calogero":
            _require(cfg.gamma >= 0.75, "evolution in the Calogero model needs gamma >= 3/4")
            _require(cfg.epsilon == 0, "evolution in the Calogero model needs epsilon = 0")
    if cfg.command in ("multitrap",) or (cfg.command == "evolve" and cfg.model == "multitrap"):
        _require(cfg.q > 0, "q must be > 0")
    if cfg.command == "deficiency" and not cfg.all:
        _require(cfg.expression in (dfc.FIRST_ORDER, dfc.SECOND_ORDER, None), "expression must be FirstOrder or SecondOrder")
        _require(cfg.interval in (*INTERVALS, None), f"interval must be one of {sorted(INTERVALS)}")


def _spectrum(cfg: RunConfig):
    for n in range(-cfg.n_max, cfg.n_max + 1):
        yield [n, momentum_eigenvalue(n, cfg.alpha), energy_eigenvalue_alpha(n, cfg.alpha)]


def _momentum(cfg: RunConfig):
    p = default_p_grid(cfg.p_max, cfg.p_points)
    n = cfg.n or 1
    if cfg.v0 is not None:
        states = solve_bound_states(FiniteWellSpec(cfg.v0))
        if n > len(states):
            raise ConfigError(f"state n={n} is not bound for v0={cfg.v0} ({len(states)} bound states)")
        density = np.abs(states[n - 1].momentum_amplitude(p)) ** 2
    else:
        grid = Grid.over(0.0, math.pi, cfg.grid_points or 2001)
        density = fourier_transform(well_eigenstate(n).sample(grid), p).density
    for pi, d in zip(p, density):
        yield [float(pi), float(d)]


def _finite_well(cfg: RunConfig):
    states = solve_bound_states(FiniteWellSpec(cfg.v0))
    if cfg.n is not None:
        if cfg.n > len(states):
            raise ConfigError(f"state n={cfg.n} is not bound for v0={cfg.v0} ({len(states)} bound states)")
        states = [states[cfg.n - 1]]
    for st in states:
        yield [st.n, cfg.v0, st.energy, asymptotic_energy(st.n, cfg.v0), distance_to_limit(st)]


def _convergence(cfg: RunConfig):
    n = cfg.n or 1
    for row in convergence_study(n, cfg.v0_list, default_p_grid(cfg.p_max, cfg.p_points)):
        yield [n, row.v0, row.E_solved, row.E_asymptote, row.l2_distance_to_limit,
               row.momentum_density_max_gap, row.bound]


def _evolve(cfg: RunConfig):
    if cfg.model == "well":
        model = InfiniteWellModel()
    elif cfg.model == "alpha":
        model = ExtensionFamilyModel(cfg.alpha)
    elif cfg.model == "multitrap":
        model = MultiTrapModel(cfg.q, cfg.m)
    else:
        model = CalogeroModel(cfg.gamma)
    grid = model_grid(model, cfg.grid_points)
    energies, modes = model_basis(model, grid)
    count = cfg.n or 2
    if isinstance(model, CalogeroModel):
        half = len(energies) // 2
        picks = [i for k in range(min(count, half)) for i in (k, half + k)]
    else:
        picks = list(np.argsort(energies, kind="stable")[:count])
    initial = WaveFunction(grid, modes[picks].sum(axis=0)).normalized()
    times = np.linspace(0.0, cfg.t_max, cfg.t_steps + 1)
    result = evolve(decompose(model, initial), times)
    for t, snap in zip(result.times, result.snapshots):
        for x, v in zip(grid.x, snap.samples):
            yield [float(t), float(x), float(v.real), float(v.imag), float(abs(v) ** 2)]


def _calogero(cfg: RunConfig):
    if cfg.epsilon > 0:
        spec = CalogeroSpec(cfg.gamma, cfg.epsilon)
        vals, _, _, res = regularized_states(spec, cfg.n_max + 1)
        for n, (e, r) in enumerate(zip(vals, res)):
            yield [n, cfg.gamma, float(e), float(r)]
        return
    spec = CalogeroSpec(cfg.gamma)
    grid = radial_grid(n_points=cfg.grid_points or 8001)
    for n in range(cfg.n_max + 1):
        e = calogero_energy(n, cfg.gamma)
        yield [n, cfg.gamma, e, residual(spec, calogero_eigenstate(n, spec).sample(grid), e)]


def _multitrap(cfg: RunConfig):
    spec = MultiTrapSpec(cfg.q, cfg.m)
    for n in range(1, cfg.n_max + 1):
        yield [spec.m, n, cfg.q, segment_energy(n, cfg.q)]


def _deficiency(cfg: RunConfig):
    if cfg.all or (cfg.expression is None and cfg.interval is None):
        reports = dfc.standard_table()
    else:
        exprs = [cfg.expression] if cfg.expression else [dfc.FIRST_ORDER, dfc.SECOND_ORDER]
        ivals = [cfg.interval] if cfg.interval else list(INTERVALS)
        reports = [dfc.classify(e, INTERVALS[i]) for e in exprs for i in ivals]
    for r in reports:
        yield [r.expression, r.interval.describe(), r.m, r.n, r.verdict]


DISPATCH = {
    "spectrum": _spectrum,
    "momentum": _momentum,
    "finite-well": _finite_well,
    "convergence": _convergence,
    "evolve": _evolve,
    "calogero": _calogero,
    "multitrap": _multitrap,
    "deficiency": _deficiency,
}


def _cell(v: Any) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def render(command: str, rows: list[list[Any]], fmt: str) -> str:
    header = HEADERS[command]
    if fmt == "json":
        records = [
            {h: (bool(v) if isinstance(v, bool) else int(v) if isinstance(v, (int, np.integer))
                 else float(v) if isinstance(v, (float, np.floating)) else v)
             for h, v in zip(header, row)}
            for row in rows
        ]
        return json.dumps({"command": command, "columns": header, "rows": records}, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_cell(v) for v in row])
    return buf.getvalue()


def output_path(cfg: RunConfig) -> Path | None:
    if cfg.output == "-":
        return None
    if cfg.output:
        return Path(cfg.output)
    root = Path(os.environ.get(OUTPUT_ENV, "."))
    return root / f"{cfg.command}.{cfg.format}"


def run(cfg: RunConfig, stdout=None) -> int:
    """Validate, compute and write one table. Returns the process exit status."""
    stdout = stdout or sys.stdout
    try:
        validate(cfg)
        rows = list(DISPATCH[cfg.command](cfg))
    except (ConfigError, QuantrapError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(cfg.command, rows, cfg.format)
    path = output_path(cfg)
    if path is None:
        stdout.write(text)
        return 0
    try:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"error: cannot write {path}: {exc}", file=sys.stderr)
        return 3
    return 0


def _float_list(text: str) -> list[float]:
    return [float(v) for v in text.split(",") if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="quantrap", description=__doc__.splitlines()[0])
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file of default parameters; flags override it")
    parser.add_argument("--alpha", type=float)
    parser.add_argument("--v0", type=float)
    parser.add_argument("--v0-list", type=_float_list, help="comma-separated barrier heights")
    parser.add_argument("--gamma", type=float)
    parser.add_argument("--epsilon", type=float)
    parser.add_argument("--q", type=float)
    parser.add_argument("--m", type=int, help="multi-trap segment index")
    parser.add_argument("--n", type=int)
    parser.add_argument("--n-max", type=int)
    parser.add_argument("--model", choices=("well", "alpha", "multitrap", "calogero"))
    parser.add_argument("--grid-points", type=int)
    parser.add_argument("--p-max", type=float)
    parser.add_argument("--p-points", type=int)
    parser.add_argument("--t-max", type=float)
    parser.add_argument("--t-steps", type=int)
    parser.add_argument("--expression", choices=(dfc.FIRST_ORDER, dfc.SECOND_ORDER))
    parser.add_argument("--interval", choices=tuple(INTERVALS))
    parser.add_argument("--all", action="store_true", default=None)
    parser.add_argument("--output", "-o", help="output file, '-' for stdout")
    parser.add_argument("--format", choices=("csv", "json"))
    return parser


def load_config(path: str) -> dict[str, Any]:
    with open(path) as fh:
        data = json.load(fh)
    if not isinstance(data, dict):
        raise ConfigError("config file must hold a flat JSON object")
    known = {f.name for f in fields(RunConfig)} - {"command"}
    extra = sorted(set(k.replace("-", "_") for k in data) - known)
    if extra:
        raise ConfigError(f"unknown config keys: {', '.join(extra)}")
    return {k.replace("-", "_"): v for k, v in data.items()}


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    merged: dict[str, Any] = {}
    if ns.config:
        merged.update(load_config(ns.config))
    for f in fields(RunConfig):
        if f.name == "command":
            continue
        val = getattr(ns, f.name, None)
        if val is not None:
            merged[f.name] = val
    try:
        return RunConfig(command=ns.command, **merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc


def main(argv: list[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except (ConfigError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
