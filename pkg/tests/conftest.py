import numpy as np
import pytest

from hopfix import PatternSet


def random_unit_patterns(d: int, n: int, rng: np.random.Generator) -> PatternSet:
    """Random unit columns, redrawn until pairwise distinct."""
    while True:
        g = rng.standard_normal((d, n))
        g /= np.linalg.norm(g, axis=0)
        try:
            return PatternSet(g)
        except ValueError:
            continue


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def demo_square():
    return PatternSet.demo_square()


@pytest.fixture
def noncips_triple():
    """w1 _|_ w2 unit, w3 = (w1 + w2)/sqrt(2): {w1, w2} is not separated."""
    w1 = np.array([1.0, 0.0])
    w2 = np.array([0.0, 1.0])
    w3 = (w1 + w2) / np.sqrt(2.0)
    return PatternSet.from_columns([w1, w2, w3])
