import random
from fractions import Fraction

import pytest

from higgsmot import (
    ConstantTermNotOneError,
    GradedSeries,
    KeyOffRayError,
    L,
    NonzeroConstantTermError,
    ONE,
    adams,
    exp_pleth,
    log_pleth,
    make_curve,
    multiply,
    nilcone_class,
    pow_pleth,
    ray_exp,
    series_adams,
)

from conftest import random_graded_series


def geometric_series(d_max):
    """1/(1-z) as a rank-0 graded series."""
    return GradedSeries({(0, d): ONE for d in range(d_max + 1)}, 0, d_max)


def test_multiply_unit_and_commutative():
    rng = random.Random(1)
    one = GradedSeries.unit(3, 4)
    for _ in range(5):
        f = random_graded_series(rng, 3, 4)
        g = random_graded_series(rng, 3, 4)
        assert multiply(f, one) == f
        assert multiply(f, g) == multiply(g, f)


def test_multiply_difference_of_squares():
    f = GradedSeries({(0, 0): ONE, (1, 1): ONE}, 2, 2)
    g = GradedSeries({(0, 0): ONE, (1, 1): -ONE}, 2, 2)
    assert multiply(f, g) == GradedSeries({(0, 0): ONE, (2, 2): -ONE}, 2, 2)


def test_series_adams_examples():
    wz = GradedSeries({(1, 1): ONE}, 1, 1)
    assert series_adams(2, wz).coeffs == {(2, 2): ONE}
    from higgsmot import U

    uw = GradedSeries({(1, 0): U}, 1, 0)
    assert series_adams(2, uw).coeffs == {(2, 0): U * U}
    f = GradedSeries({(1, 2): L}, 2, 3)
    assert series_adams(1, f) == f


def test_series_adams_is_ring_hom():
    rng = random.Random(5)
    for _ in range(5):
        f = random_graded_series(rng, 2, 3)
        g = random_graded_series(rng, 2, 3)
        lhs = series_adams(2, multiply(f, g))
        rhs = multiply(series_adams(2, f), series_adams(2, g))
        assert lhs.same_coefficients(rhs)
        assert series_adams(2, f + g) == series_adams(2, f) + series_adams(2, g)
        for (r, d), c in f.coeffs.items():
            assert series_adams(3, f).get(3 * r, 3 * d) == adams(3, c)


def test_exp_point_case():
    z = GradedSeries({(0, 1): ONE}, 0, 6)
    assert exp_pleth(z) == geometric_series(6)


def test_exp_nilpotent_cone_series():
    seed = GradedSeries({(0, 1): ONE / (L - 1)}, 0, 10)
    expd = exp_pleth(seed)
    for l in range(11):
        assert expd.get(0, l) == nilcone_class(l)


def test_exp_is_group_homomorphism():
    rng = random.Random(11)
    for _ in range(5):
        f = random_graded_series(rng, 2, 4)
        g = random_graded_series(rng, 2, 4)
        assert exp_pleth(f + g).same_coefficients(
            multiply(exp_pleth(f), exp_pleth(g))
        )


def test_exp_rejects_constant_term():
    with pytest.raises(NonzeroConstantTermError):
        exp_pleth(GradedSeries({(0, 0): ONE}, 1, 1))


def test_log_point_case():
    assert log_pleth(geometric_series(6)) == GradedSeries({(0, 1): ONE}, 0, 6)


def test_log_one_plus_w():
    # Moebius/Adams recursion gives w - w^2 and nothing in orders 3, 4
    f = GradedSeries({(0, 0): ONE, (1, 0): ONE}, 4, 0)
    expected = GradedSeries({(1, 0): ONE, (2, 0): -ONE}, 4, 0)
    got = log_pleth(f)
    assert got == expected
    assert exp_pleth(got) == f


def test_log_rejects_wrong_constant_term():
    with pytest.raises(ConstantTermNotOneError):
        log_pleth(GradedSeries({(0, 0): L}, 1, 1))
    with pytest.raises(ConstantTermNotOneError):
        log_pleth(GradedSeries({(1, 0): ONE}, 1, 1))


def test_exp_log_roundtrip_randomized():
    rng = random.Random(23)
    for _ in range(10):
        f = random_graded_series(rng, 3, 5)
        assert log_pleth(exp_pleth(f)) == f
        h = exp_pleth(f)
        assert exp_pleth(log_pleth(h)) == h


def test_pow_unit_exponent():
    rng = random.Random(3)
    # random series with constant term one
    f = GradedSeries.unit(2, 3) + random_graded_series(rng, 2, 3)
    assert pow_pleth(f, ONE) == f


def test_pow_geometric_by_l():
    d_max = 6
    powed = pow_pleth(geometric_series(d_max), L)
    for d in range(d_max + 1):
        assert powed.get(0, d) == L**d


def test_pow_torsion_core(curves):
    # Pow of the nilpotent-cone series with exponent [X] equals
    # Exp([X] z / (L - 1))
    x = curves[1].class_of_x
    d_max = 6
    nil = GradedSeries({(0, l): nilcone_class(l) for l in range(d_max + 1)}, 0, d_max)
    lhs = pow_pleth(nil, x)
    rhs = exp_pleth(GradedSeries({(0, 1): x / (L - 1)}, 0, d_max))
    assert lhs == rhs


def test_pow_bimultiplicative():
    rng = random.Random(17)
    a, b = L, ONE - L
    for _ in range(3):
        f = exp_pleth(random_graded_series(rng, 2, 3))
        g = exp_pleth(random_graded_series(rng, 2, 3))
        assert pow_pleth(f, a + b).same_coefficients(
            multiply(pow_pleth(f, a), pow_pleth(f, b))
        )
        assert pow_pleth(multiply(f, g), a).same_coefficients(
            multiply(pow_pleth(f, a), pow_pleth(g, a))
        )


def test_ray_exp_single_generator():
    b = {(1, 2): L - 1}
    out = ray_exp(b, Fraction(2, 1), 1, 2)
    assert out == {(1, 2): L - 1}


def test_ray_exp_empty():
    assert ray_exp({}, Fraction(1, 2), 4, 4) == {}


def test_ray_exp_off_ray_rejected():
    with pytest.raises(KeyOffRayError):
        ray_exp({(1, 1): ONE, (2, 1): ONE}, Fraction(1, 1), 4, 4)


def test_ray_exp_matches_full_exp_on_ray():
    # slope-1 ray with entries at (1,1) and (2,2): the (2,2) output must
    # agree with the full two-variable exponential restricted to the ray
    b11, b22 = ONE / (L - 1), L + 1
    seed = GradedSeries({(1, 1): b11, (2, 2): b22}, 2, 2)
    full = exp_pleth(seed)
    out = ray_exp({(1, 1): b11, (2, 2): b22}, Fraction(1), 2, 2)
    assert out[(1, 1)] == full.get(1, 1)
    assert out[(2, 2)] == full.get(2, 2)
    # second-order structure: the (2,2) entry is b22 plus Exp corrections
    correction = out[(2, 2)] - b22
    assert correction == adams(2, b11) / 2 + b11 * b11 / 2


def test_ray_factors_recoverable_from_product():
    # Exp of a sum over several rays; Log recovers each ray's generators
    rng = random.Random(29)
    b = {}
    for (r, d) in [(1, 0), (1, 1), (2, 1), (1, 2), (2, 2)]:
        from conftest import random_class

        b[(r, d)] = random_class(rng)
    seed = GradedSeries(b, 2, 4)
    total = exp_pleth(seed)
    recovered = log_pleth(total)
    assert recovered == seed.truncate(2, 4)
