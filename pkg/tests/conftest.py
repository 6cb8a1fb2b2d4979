import random

import pytest

from higgsmot import L, ONE, U, V, make_class, make_curve


@pytest.fixture(scope="session")
def curves():
    return {g: make_curve(g) for g in range(5)}


# a pool of small exact classes used by randomized ring/series tests
CLASS_POOL = [
    ONE,
    -ONE,
    make_class(2),
    L,
    U,
    V,
    L - 1,
    ONE / (L - 1),
    U + V,
    L**2,
    ONE / L,
    (U - 1) * (V - 1),
]


def random_class(rng: random.Random):
    x = rng.choice(CLASS_POOL)
    if rng.random() < 0.3:
        x = x + rng.choice(CLASS_POOL)
    return x


def random_graded_series(rng: random.Random, r_max: int, d_max: int, terms: int = 5):
    from higgsmot import GradedSeries

    coeffs = {}
    for _ in range(terms):
        r = rng.randint(0, r_max)
        d = rng.randint(0, d_max)
        if (r, d) == (0, 0):
            continue
        coeffs[(r, d)] = random_class(rng)
    return GradedSeries(coeffs, r_max, d_max)
