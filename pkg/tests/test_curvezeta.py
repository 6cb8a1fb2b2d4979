import pytest

from higgsmot import (
    L,
    NegativeGenusError,
    ONE,
    PoleAtArgumentError,
    RationalZ,
    U,
    V,
    make_curve,
    simple_pole_residue,
    vol,
    zeta_eval,
    zeta_of_class,
    zeta_star,
)
from higgsmot._poly import RING_UVZ

U3, V3, Z3 = RING_UVZ.gens


def test_genus_zero_curve(curves):
    c = curves[0]
    assert c.p_num == (ONE,)
    assert c.class_of_x == ONE + L
    assert c.jac == ONE
    assert c.pic_stack == ONE / (L - 1)


def test_genus_one_curve(curves):
    c = curves[1]
    # P(T) = (1 - uT)(1 - vT)
    assert c.p_num == (ONE, -(U + V), L)
    assert c.jac == (ONE - U) * (ONE - V)


def test_genus_two_top_term(curves):
    c = curves[2]
    assert c.p_num[-1] == L**2
    assert len(c.p_num) == 5


def test_negative_genus_rejected():
    with pytest.raises(NegativeGenusError):
        make_curve(-1)


@pytest.mark.parametrize("g", range(5))
def test_functional_equation(curves, g):
    c = curves[g]
    zeta = zeta_eval(c, 0, 1)
    assert zeta.substitute_z_inverse_l() == zeta.scale_monomial(1 - g, 2 - 2 * g)


@pytest.mark.parametrize("g", range(5))
def test_numerator_special_value(curves, g):
    c = curves[g]
    assert c.p_at(L**-1) == L**-g * c.p_at(ONE)


def test_zeta_eval_genus_zero_shifted(curves):
    got = zeta_eval(curves[0], -1, 1)
    one = RationalZ.one()
    expected = ONE / (
        (one - one.scale_monomial(-1, 1)) * (one - one.scale_monomial(0, 1))
    )
    assert got == expected


def test_zeta_eval_constant_invertible(curves):
    for g in range(4):
        value = zeta_eval(curves[g], -2, 0)
        assert value  # nonzero, hence invertible in the fraction field
        assert value * value.inverse() == ONE


def test_zeta_eval_genus_one_plain(curves):
    got = zeta_eval(curves[1], 0, 1)
    expected = RationalZ(
        (1 - U3 * Z3) * (1 - V3 * Z3), (1 - Z3) * (1 - U3 * V3 * Z3)
    )
    assert got == expected


def test_zeta_eval_pole_errors(curves):
    with pytest.raises(PoleAtArgumentError):
        zeta_eval(curves[1], 0, 0)
    with pytest.raises(PoleAtArgumentError):
        zeta_eval(curves[1], -1, 0)


@pytest.mark.parametrize("g", range(4))
def test_zeta_star_pole_cases(curves, g):
    c = curves[g]
    assert zeta_star(c, 1, 0) == c.p_at(L**-1) / (ONE - L**-1)
    assert zeta_star(c, 0, 0) == c.p_at(ONE) / (ONE - L)
    assert zeta_star(c, 2, 0) == zeta_eval(c, -2, 0)
    assert zeta_star(c, 1, 2) == zeta_eval(c, -1, 2)


@pytest.mark.parametrize("g", range(4))
def test_zeta_star_agrees_with_residues(curves, g):
    c = curves[g]
    over_z = zeta_eval(c, 0, 1).scale_monomial(0, -1)  # zeta(z) dz/z integrand
    assert simple_pole_residue(over_z, L**-1) == zeta_star(c, 1, 0)
    assert simple_pole_residue(over_z, ONE) == zeta_star(c, 0, 0)


def test_zeta_of_class_point():
    series = zeta_of_class(ONE, 8)
    assert all(c == ONE for c in series)


def test_zeta_of_class_lefschetz():
    series = zeta_of_class(L, 8)
    assert all(series[d] == L**d for d in range(9))


def test_zeta_of_class_curve_oracle(curves):
    # independent oracle: the expansion of the closed-form zeta function
    for g in (1, 2):
        c = curves[g]
        series = zeta_of_class(c.class_of_x, 8)
        rational = zeta_eval(c, 0, 1).series(8)
        assert all(series[d] == rational[d] for d in range(9))


def test_zeta_of_class_additive(curves):
    a, b = curves[1].class_of_x, L + 1
    d_max = 6
    sa = zeta_of_class(a, d_max)
    sb = zeta_of_class(b, d_max)
    sab = zeta_of_class(a + b, d_max)
    assert sab == sa * sb


def test_zeta_of_class_l_twist(curves):
    a = curves[2].class_of_x
    d_max = 6
    twisted = zeta_of_class(L * a, d_max)
    plain = zeta_of_class(a, d_max)
    assert all(twisted[d] == plain[d] * L**d for d in range(d_max + 1))


def test_vol_rank_one(curves):
    for g in range(4):
        c = curves[g]
        assert vol(c, 1) == c.jac / (L - 1)


def test_vol_rank_two_genus_zero(curves):
    c = curves[0]
    assert vol(c, 2) == L**-3 / (L - 1) * zeta_eval(c, -2, 0)


def test_vol_rank_three_genus_one(curves):
    c = curves[1]
    expected = c.jac * zeta_eval(c, -2, 0) * zeta_eval(c, -3, 0) / (L - 1)
    assert vol(c, 3) == expected
