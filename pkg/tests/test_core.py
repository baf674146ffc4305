import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quantrap.core import (
    Bounded,
    FullLine,
    Grid,
    HalfLine,
    WaveFunction,
    default_p_grid,
    fourier_transform,
    inner_product,
    integrate,
    integrate_between,
    l2_distance,
)
from quantrap.errors import GridMismatch, InvalidArgument
from quantrap.infinite_well import well_eigenstate


def psi(n, grid):
    return well_eigenstate(n).sample(grid)


def test_bounded_requires_positive_length():
    with pytest.raises(InvalidArgument):
        Bounded(1.0, 1.0)


def test_indicator_closed_set():
    iv = Bounded(0.0, 1.0)
    assert list(iv.indicator(np.array([-0.1, 0.0, 0.5, 1.0, 1.1]))) == [0, 1, 1, 1, 0]
    assert list(HalfLine(0.0, -1).indicator(np.array([-1.0, 0.0, 1.0]))) == [1, 1, 0]
    assert list(FullLine().indicator(np.array([-1e9, 1e9]))) == [1, 1]


def test_grid_rounds_to_odd_and_includes_endpoints():
    g = Grid.over(0.0, 1.0, 10)
    assert g.n_points == 11
    assert g.x[0] == 0.0 and g.x[-1] == 1.0
    assert np.all(np.diff(g.x) > 0)
    with pytest.raises(InvalidArgument):
        Grid.over(0.0, 1.0, 2)


def test_inner_product_examples(unit_grid):
    p1, p2 = psi(1, unit_grid), psi(2, unit_grid)
    assert abs(inner_product(p1, p1) - 1) < 1e-10
    assert abs(inner_product(p1, p2)) < 1e-10
    one = WaveFunction(unit_grid, np.ones(unit_grid.n_points))
    assert abs(inner_product(one, one) - np.pi) < 1e-10


def test_grid_mismatch_raises(unit_grid):
    other = Grid.over(0.0, np.pi, 101)
    with pytest.raises(GridMismatch):
        inner_product(psi(1, unit_grid), psi(1, other))
    with pytest.raises(GridMismatch):
        l2_distance(psi(1, unit_grid), psi(1, other))


def test_l2_distance_examples(unit_grid):
    p1, p2 = psi(1, unit_grid), psi(2, unit_grid)
    assert l2_distance(p1, p1) == 0.0
    assert abs(l2_distance(p1, p1.scaled(-1)) - 2) < 1e-10
    assert abs(l2_distance(p1, p2) - np.sqrt(2)) < 1e-8


def test_fourier_examples(unit_grid):
    dist = fourier_transform(psi(1, unit_grid), np.array([0.0]))
    assert abs(dist.amplitude[0] - 2 / np.pi) < 1e-10
    dist2 = fourier_transform(psi(2, unit_grid), np.array([0.0]))
    assert abs(dist2.amplitude[0]) < 1e-12
    with pytest.raises(InvalidArgument):
        fourier_transform(psi(1, unit_grid), np.array([]))


def test_parseval_psi1(unit_grid):
    dist = fourier_transform(psi(1, unit_grid), default_p_grid())
    assert np.allclose(dist.density, np.abs(dist.amplitude) ** 2)
    assert abs(dist.total() - 1) < 1e-4


def test_parseval_error_shrinks_with_p_range(unit_grid):
    f = psi(2, unit_grid)
    errs = [abs(fourier_transform(f, np.linspace(-P, P, 40 * int(P) + 1)).total() - 1) for P in (10, 20, 40)]
    assert errs[0] > errs[1] > errs[2]


@given(st.lists(st.floats(-3, 3), min_size=4, max_size=4), st.integers(3, 400))
@settings(max_examples=40, deadline=None)
def test_simpson_exact_for_cubics(coeffs, n):
    g = Grid.over(-1.0, 2.0, n)
    poly = np.polynomial.Polynomial(coeffs)
    exact = poly.integ()(2.0) - poly.integ()(-1.0)
    assert abs(integrate(g, poly(g.x)) - exact) < 1e-11 * (1 + abs(exact))


@given(st.integers(0, 10_000))
@settings(max_examples=25, deadline=None)
def test_inner_product_conjugate_symmetric(seed):
    rng = np.random.default_rng(seed)
    g = Grid.over(0.0, 1.0, 51)
    f = WaveFunction(g, rng.normal(size=51) + 1j * rng.normal(size=51))
    h = WaveFunction(g, rng.normal(size=51) + 1j * rng.normal(size=51))
    assert abs(inner_product(f, h) - np.conj(inner_product(h, f))) < 1e-12
    assert f.norm_sq() >= 0


@given(st.integers(0, 10_000))
@settings(max_examples=20, deadline=None)
def test_fourier_of_real_function_is_hermitian(seed):
    rng = np.random.default_rng(seed)
    g = Grid.over(0.0, np.pi, 201)
    coeffs = rng.normal(size=4)
    f = WaveFunction(g, sum(c * np.sin((k + 1) * g.x) for k, c in enumerate(coeffs)))
    p = np.linspace(0.1, 10, 25)
    pos = fourier_transform(f, p).amplitude
    neg = fourier_transform(f, -p).amplitude
    assert np.allclose(neg, np.conj(pos), atol=1e-13)


def test_support_and_mass_outside():
    g = Grid.over(-1.0, 2.0, 301)
    f = WaveFunction(g, np.where((g.x >= 0) & (g.x <= 1), 1.0, 0.0))
    assert f.is_supported_by(0.0, 1.0)
    assert not f.is_supported_by(0.2, 1.0)
    assert f.mass_outside(0.0, 1.0) == pytest.approx(0.0, abs=1e-15)


def test_integrate_between_off_grid_uses_spline():
    x = np.linspace(0, 1, 101)
    assert integrate_between(x, x**2, 0.123, 0.877) == pytest.approx((0.877**3 - 0.123**3) / 3, rel=1e-10)
