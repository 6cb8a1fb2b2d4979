import random

import pytest
from hypothesis import given, settings, strategies as st

from higgsmot import (
    L,
    ONE,
    U,
    V,
    ZERO,
    ZeroDenominatorError,
    adams,
    gl_class,
    make_class,
    nilcone_class,
)
from higgsmot._poly import POLY_U, POLY_V

from conftest import CLASS_POOL

UV = POLY_U * POLY_V


def test_make_class_already_canonical():
    x = make_class(UV - 1, 1)
    assert x == L - 1
    assert x.den == x.den.ring.one


def test_make_class_no_common_factor():
    x = make_class(POLY_U**2 * POLY_V - UV, UV - 1)
    assert x.num == POLY_U**2 * POLY_V - UV
    assert x.den == UV - 1
    assert x == U * L / (L - 1) * (U - 1) / U  # uv(u-1)/(uv-1)


def test_make_class_content_normalization():
    x = make_class({(1, 0): 2}, 4)
    assert x.num == POLY_U
    assert x.den == x.den.ring(2)
    assert x == U / 2


def test_make_class_zero_denominator():
    with pytest.raises(ZeroDenominatorError):
        make_class(1, 0)


def test_make_class_idempotent():
    for x in CLASS_POOL:
        assert make_class(x.num, x.den) == x


def test_adams_examples():
    assert adams(2, U) == U * U
    assert adams(2, ONE / (L - 1)) == ONE / (L**2 - 1)
    rng = random.Random(7)
    for _ in range(10):
        x = rng.choice(CLASS_POOL)
        assert adams(1, x) == x


def test_adams_rejects_nonpositive():
    with pytest.raises(ValueError):
        adams(0, L)


def test_gl_class_small_ranks():
    assert gl_class(0) == ONE
    assert gl_class(1) == L - 1
    assert gl_class(2) == (L**2 - 1) * (L**2 - L)


def test_nilcone_class_small_dims():
    assert nilcone_class(0) == ONE
    assert nilcone_class(1) == ONE / (L - 1)
    assert nilcone_class(2) == L**2 / ((L**2 - 1) * (L**2 - L))


@pytest.mark.parametrize("n", range(6))
def test_gl_times_nilcone(n):
    assert gl_class(n) * nilcone_class(n) == L ** (n * (n - 1))


pool_elements = st.sampled_from(CLASS_POOL)


@settings(max_examples=60, deadline=None)
@given(pool_elements, pool_elements, pool_elements)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * y == y * x
    assert x * (y + z) == x * y + x * z
    assert x + ZERO == x
    assert x * ONE == x
    assert x - x == ZERO


@settings(max_examples=40, deadline=None)
@given(pool_elements, pool_elements, st.integers(1, 4), st.integers(1, 3))
def test_adams_operations(x, y, n, m):
    assert adams(m, adams(n, x)) == adams(m * n, x)
    assert adams(n, x * y) == adams(n, x) * adams(n, y)
    assert adams(n, x + y) == adams(n, x) + adams(n, y)


@settings(max_examples=40, deadline=None)
@given(pool_elements, pool_elements)
def test_equality_is_equivalence(x, y):
    assert x == x
    if x == y:
        assert y == x
        assert hash(x) == hash(y)


def test_division_and_powers():
    x = (L**2 - 1) / (L - 1)
    assert x == L + 1
    assert L**-2 * L**2 == ONE
    assert (U + V) ** 0 == ONE
    with pytest.raises(ZeroDenominatorError):
        ONE / ZERO


def test_canonical_sign_convention():
    # the denominator always carries a positive leading coefficient
    x = make_class(1, {(0, 0): 1, (1, 1): -1})  # 1/(1-uv)
    assert x.den.LC > 0
    assert x == -ONE / (L - 1)
