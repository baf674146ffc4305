import numpy as np
import pytest

from conftest import random_packets, sin3_packet
from quantrap.core import Grid, WaveFunction, inner_product, l2_distance
from quantrap.errors import InvalidArgument, OutOfRange, PreconditionViolated, UnfaithfulExpansion, UnsupportedRange
from quantrap.evolution import (
    CalogeroModel,
    ExtensionFamilyModel,
    FiniteWellModel,
    InfiniteWellModel,
    MultiTrapModel,
    confinement_verdict,
    decompose,
    evolve,
    model_basis,
    model_grid,
    probability_current,
)
from quantrap.extension import AlphaBasisState
from quantrap.infinite_well import well_eigenstate
from quantrap.singular import CalogeroSpec, calogero_eigenstate

TIMES = np.linspace(0, 10, 41)


@pytest.fixture(scope="module")
def well_grid():
    return model_grid(InfiniteWellModel())


def calogero_trial(grid, seed, sides=("right",)):
    rng = np.random.default_rng(seed)
    spec = CalogeroSpec(2.0)
    vals = np.zeros(grid.n_points, dtype=complex)
    for side in sides:
        for n in range(5):
            vals += (rng.normal() + 1j * rng.normal()) * calogero_eigenstate(n, spec, side)(grid.x)
    return WaveFunction(grid, vals).normalized()


def test_stationary_state(well_grid):
    psi1 = well_eigenstate(1).sample(well_grid)
    res = evolve(decompose(InfiniteWellModel(), psi1), [0.0, 0.7, 3.3])
    for snap in res.snapshots:
        assert np.allclose(np.abs(snap.samples), np.abs(psi1.samples), atol=1e-12)


def test_initial_state_reproduced(well_grid):
    (f,) = random_packets(well_grid, 1, seed=3)
    res = evolve(decompose(InfiniteWellModel(), f), [0.0])
    assert l2_distance(res.snapshots[0], f) <= 1e-10


def test_full_revival(well_grid):
    rng = np.random.default_rng(7)
    c = rng.normal(size=10) + 1j * rng.normal(size=10)
    vals = sum(ck * well_eigenstate(n + 1)(well_grid.x) for n, ck in enumerate(c))
    f = WaveFunction(well_grid, vals).normalized()
    res = evolve(decompose(InfiniteWellModel(), f), [0.0, 1.0, 2 * np.pi])
    assert res.autocorrelation[2] == pytest.approx(1, abs=1e-10)
    assert abs(abs(inner_product(f, res.snapshots[2])) - 1) <= 1e-10
    assert res.autocorrelation[1] < 0.99


def test_alpha_pi_ground_phase(unit_grid):
    e0 = AlphaBasisState(0, np.pi).sample(unit_grid)
    assert e0.grid is unit_grid
    decomp = decompose(ExtensionFamilyModel(np.pi), e0)
    snap = evolve(decomp, [1.0]).snapshots[0]
    assert np.allclose(snap.samples, np.exp(-1j) * e0.samples, atol=1e-10)
    assert np.allclose(snap.density, e0.density, atol=1e-12)


@pytest.mark.parametrize(
    "model",
    [InfiniteWellModel(), MultiTrapModel(2.0, 1), ExtensionFamilyModel(0.0), ExtensionFamilyModel(1.3)],
    ids=["well", "multitrap", "alpha0", "alpha1.3"],
)
def test_unitarity_and_time_reversal(model):
    grid = model_grid(model)
    if isinstance(model, MultiTrapModel):
        a, b = np.pi / 2 * (model.m - 1), np.pi / 2 * model.m
        trials = random_packets(grid, 3, seed=11, a=a, b=b)
    else:
        trials = random_packets(grid, 3, seed=11)
    for f in trials:
        decomp = decompose(model, f)
        res = evolve(decomp, TIMES)
        assert np.max(np.abs(res.norms - 1)) <= 1e-10
        for t, snap in zip(TIMES[::8], res.snapshots[::8]):
            back = evolve(decomp.with_state(snap), [-t]).snapshots[0]
            assert l2_distance(back, f) <= 1e-9


def test_calogero_unitarity_and_reversal():
    model = CalogeroModel(2.0)
    grid = model_grid(model)
    f = calogero_trial(grid, 5, sides=("left", "right"))
    decomp = decompose(model, f)
    res = evolve(decomp, TIMES)
    assert np.max(np.abs(res.norms - 1)) <= 1e-10
    back = evolve(decomp.with_state(res.snapshots[-1]), [-TIMES[-1]]).snapshots[0]
    assert l2_distance(back, f) <= 1e-9


def test_side_probabilities_constant():
    model = CalogeroModel(2.0)
    grid = model_grid(model)
    f = calogero_trial(grid, 9, sides=("left", "right"))
    res = evolve(decompose(model, f), TIMES)
    x = grid.x
    p_plus = [s.mass_outside(-12.0, 0.0) for s in res.snapshots]
    assert np.ptp(p_plus) <= 1e-8
    assert max(abs(probability_current(s, 0.0)) for s in res.snapshots) <= 1e-8
    assert x[grid.index_of(0.0)] == 0.0


def test_unfaithful_expansion_reports_deficit(well_grid):
    # a constant on [0, pi] converges too slowly in 4 sine modes
    f = WaveFunction(well_grid, np.where((well_grid.x >= 0) & (well_grid.x <= np.pi), 1.0, 0.0)).normalized()
    with pytest.raises(UnfaithfulExpansion) as err:
        evolve(decompose(InfiniteWellModel(), f, n_modes=4), [1.0])
    assert err.value.deficit > 1e-6


def test_models_without_basis():
    g = Grid.over(0.0, np.pi, 101)
    with pytest.raises(InvalidArgument):
        model_basis(FiniteWellModel(100.0), g)
    with pytest.raises(UnsupportedRange):
        model_basis(CalogeroModel(0.5), model_grid(CalogeroModel(2.0)))
    with pytest.raises(InvalidArgument):
        model_basis(CalogeroModel(2.0, 1e-3), model_grid(CalogeroModel(2.0)))


def test_current_real_function_is_zero(unit_grid):
    f = well_eigenstate(2).sample(unit_grid)
    for x0 in unit_grid.x[1:-1:97]:
        assert probability_current(f, x0) == 0.0


@pytest.mark.parametrize("k", [1.0, 3.0, -5.0])
def test_current_of_moving_packet(k):
    g = Grid.over(-10, 10, 4001)
    f = WaveFunction(g, np.exp(-(g.x**2) / 4 + 1j * k * g.x))
    i = g.index_of(0.0)
    assert probability_current(f, 0.0) == pytest.approx(2 * k * abs(f.samples[i]) ** 2, rel=0.02)


def test_current_needs_interior_node(unit_grid):
    f = well_eigenstate(1).sample(unit_grid)
    with pytest.raises(OutOfRange):
        probability_current(f, 0.0)
    with pytest.raises(OutOfRange):
        probability_current(f, 0.123456789)


def test_confinement_examples(well_grid):
    well = confinement_verdict(InfiniteWellModel(), random_packets(well_grid, 5, seed=1), TIMES)
    assert well.confined and well.max_leak <= 1e-9
    mt = MultiTrapModel(2.0, 1)
    mt_trials = random_packets(model_grid(mt), 5, seed=2, a=0.0, b=np.pi / 2)
    assert confinement_verdict(mt, mt_trials, TIMES).confined
    cal = CalogeroModel(2.0)
    cal_trials = [calogero_trial(model_grid(cal), s) for s in range(3)]
    assert confinement_verdict(cal, cal_trials, TIMES).confined


def test_confinement_rejects_unsupported_trial(well_grid):
    outside = WaveFunction(well_grid, np.exp(-((well_grid.x - np.pi) ** 2)))
    with pytest.raises(PreconditionViolated):
        confinement_verdict(InfiniteWellModel(), [outside], [0.0])


def test_moving_packet_leaves_no_trace_outside(well_grid):
    f = sin3_packet(well_grid, center=1.0, width=0.15, k0=8.0)
    res = evolve(decompose(InfiniteWellModel(), f), TIMES)
    assert max(s.mass_outside(0.0, np.pi) for s in res.snapshots) <= 1e-9
