import numpy as np
import pytest

from quantrap.core import Grid


@pytest.fixture(scope="session")
def unit_grid():
    return Grid.over(0.0, np.pi, 2001)


@pytest.fixture(scope="session")
def fine_grid():
    return Grid.over(0.0, np.pi, 4001)


def sin3_packet(grid, center, width, k0, a=0.0, b=np.pi):
    """Smooth packet vanishing at the walls of [a, b] like sin^3, normalized."""
    x = grid.x
    s = np.sin(np.pi * (x - a) / (b - a))
    inside = (x >= a) & (x <= b)
    vals = np.where(inside, s**3 * np.exp(-((x - center) ** 2) / (2 * width**2) + 1j * k0 * x), 0.0)
    from quantrap.core import WaveFunction
    return WaveFunction(grid, vals).normalized()


def random_packets(grid, count, seed, a=0.0, b=np.pi):
    rng = np.random.default_rng(seed)
    L = b - a
    out = []
    for _ in range(count):
        c = a + L * rng.uniform(0.3, 0.7)
        w = L * rng.uniform(0.12, 0.2) / np.pi
        k0 = rng.uniform(-5, 5) * np.pi / L
        out.append(sin3_packet(grid, c, w, k0, a, b))
    return out
