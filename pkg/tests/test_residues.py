import json
from pathlib import Path

import pytest
import sympy as sp

from higgsmot import (
    HigherOrderPoleError,
    L,
    MultiRational,
    ONE,
    Partition,
    RationalZ,
    enumerate_partitions,
    h_mot,
    j_mot,
    l_mot,
    make_curve,
    res_lambda,
    res_lambda_sequential,
    simple_pole_residue,
    stabilized_residue_limit,
    zeta_eval,
    zeta_star,
)
from higgsmot._poly import RING_UVZ, ring_with_zs
from higgsmot.residues import symmetrization_invariance_check

GOLDEN = Path(__file__).parent / "golden" / "residues.json"


# ---------------------------------------------------------------------------
# box products
# ---------------------------------------------------------------------------


def test_j_empty(curves):
    series = j_mot(curves[1], Partition(()), 4)
    assert series[0] == ONE and all(series[d] == 0 for d in range(1, 5))


def test_j_single_box(curves):
    for g in (0, 1, 2):
        c = curves[g]
        series = j_mot(c, Partition((1,)), 4)
        expected = zeta_star(c, 1, 0)
        assert series[0] == expected
        assert all(series[d] == 0 for d in range(1, 5))


def test_j_row_of_two(curves):
    # boxes (1,1): arm 1, leg 0 and (2,1): arm 0, leg 0, so the product is
    # zeta(1/L z) times the regularized value at 1/L
    for g in (0, 1, 2):
        c = curves[g]
        series = j_mot(c, Partition((2,)), 6)
        expected = zeta_eval(c, -1, 1).series(6) * zeta_star(c, 1, 0)
        assert series == expected


def test_j_column_of_two(curves):
    c = curves[1]
    series = j_mot(c, Partition((1, 1)), 4)
    const = zeta_star(c, 1, 0) * zeta_eval(c, -2, 0)
    assert series[0] == const
    assert all(series[d] == 0 for d in range(1, 5))


# ---------------------------------------------------------------------------
# the symmetrized kernel
# ---------------------------------------------------------------------------


def test_l_mot_one_variable(curves):
    ring1, (z1,) = ring_with_zs(1)
    for g in (0, 3):
        assert l_mot(curves[g], 1) == MultiRational(ring1.one, 1 - z1, 1)


def test_l_mot_two_variables_genus_zero(curves):
    # hand expansion of the two permutation terms:
    #   (z1 - z2) / ((z1 - L z2)(1 - z1)(1 - z2))
    ring2, (z1, z2) = ring_with_zs(2)
    u, v = ring2.gens[0], ring2.gens[1]
    expected = MultiRational(
        z1 - z2, (z1 - u * v * z2) * (1 - z1) * (1 - z2), 2
    )
    assert l_mot(curves[0], 2) == expected


def _pool_factors(n):
    ring_n, zs = ring_with_zs(n)
    u, v = ring_n.gens[0], ring_n.gens[1]
    z = [None] + zs
    pool = set()
    for i in range(1, n + 1):
        pool.add(z[i])
        pool.add(1 - z[i])
        for j in range(1, n + 1):
            if i != j:
                for coef in (ring_n.one, u, v, u * v):
                    pool.add(z[i] - coef * z[j])
    return pool


@pytest.mark.parametrize("g", [0, 1, 2])
def test_l_mot_three_variables_denominator_structure(curves, g):
    # the reduced denominator is a product of the known factor shapes:
    # differences of z-variables scaled by 1, u, v or uv, factors 1 - z_i,
    # and plain z_i
    from higgsmot.residues import _l_mot_factored

    kernel = l_mot(curves[g], 3)
    num, den_factors = _l_mot_factored(g, 3)
    pool = _pool_factors(3)
    ring3, _ = ring_with_zs(3)
    product = ring3.one
    for factor, mult in den_factors.items():
        assert factor in pool, f"factor {factor} not of pool shape"
        product *= factor**mult
    # the public reduced kernel has exactly this denominator (up to the
    # canonical sign) and the matching numerator
    if product.LC < 0:
        product, num = -product, -num
    assert kernel.den == product
    assert kernel.num == num


@pytest.mark.parametrize("g,n", [(0, 2), (0, 3), (1, 2), (1, 3), (2, 2), (2, 3)])
def test_symmetrization_fixed_point(curves, g, n):
    assert symmetrization_invariance_check(curves[g], n)


# ---------------------------------------------------------------------------
# iterated residues
# ---------------------------------------------------------------------------


def test_res_single_box(curves):
    expected = RationalZ(RING_UVZ.one, 1 - RING_UVZ.gens[2])
    for g in (0, 2):
        assert res_lambda(curves[g], Partition((1,))) == expected


def test_res_empty(curves):
    assert res_lambda(curves[1], Partition(())) == RationalZ.one()


def test_res_column_matches_independent_symbolic(curves):
    # fully independent computation with sympy expressions: symmetrize,
    # clear the pole factor, cancel, substitute; equality is checked by
    # cross multiplication of the two fractions
    u, v, z, z1, z2 = sp.symbols("u v z z1 z2")
    lq = u * v
    for g in (0, 1, 2):

        def zt(x, g=g):
            p = (1 - u * x) ** g * (1 - v * x) ** g
            return x ** (1 - g) * p / ((1 - x) * (1 - lq * x))

        term_id = 1 / ((1 - lq * z2 / z1) * (1 - z1))
        ratio = sp.cancel(zt(z2 / z1) / zt(z1 / z2))
        term_swap = ratio / ((1 - lq * z1 / z2) * (1 - z2))
        cleared = sp.cancel(
            sp.together((1 - lq * z2 / z1) * (term_id + term_swap))
        )
        independent = sp.cancel(cleared.subs({z1: z, z2: z / lq}, simultaneous=True))
        ind_num, ind_den = sp.fraction(sp.together(independent))

        mine = res_lambda(curves[g], Partition((1, 1)))

        def to_expr(poly):
            acc = 0
            for (eu, ev, ez), c in poly.terms():
                acc += int(c) * u**eu * v**ev * z**ez
            return acc

        cross = sp.expand(to_expr(mine.num) * ind_den - ind_num * to_expr(mine.den))
        assert cross == 0


@pytest.mark.parametrize("g", [0, 1, 2])
@pytest.mark.parametrize("parts", [(1, 1), (1, 1, 1)])
def test_res_sequential_consistency(curves, g, parts):
    lam = Partition(parts)
    assert res_lambda_sequential(curves[g], lam) == res_lambda(curves[g], lam)


@pytest.mark.parametrize("g", [0, 1, 2])
def test_res_denominator_invertible_at_zero(curves, g):
    for lam in enumerate_partitions(4):
        if lam.size == 0:
            continue
        assert res_lambda(curves[g], lam).den_at_zero_invertible()


def test_h_mot_single_box(curves):
    series = h_mot(curves[1], Partition((1,)), 6)
    assert all(c == ONE for c in series)


def test_h_mot_empty(curves):
    series = h_mot(curves[1], Partition(()), 4)
    assert series[0] == ONE and all(c == 0 for c in series[1:])


def test_h_mot_constant_term(curves):
    for g in (0, 1):
        for parts in [(2,), (1, 1), (2, 1), (3,)]:
            lam = Partition(parts)
            fraction = res_lambda(curves[g], lam)
            assert h_mot(curves[g], lam, 0)[0] == fraction.constant_term()


# ---------------------------------------------------------------------------
# one-variable residues
# ---------------------------------------------------------------------------


def test_simple_pole_basic():
    one = RationalZ.one()
    z = one.scale_monomial(0, 1)
    f = one / (one - z)
    assert simple_pole_residue(f, ONE) == ONE


def test_simple_pole_regular_point():
    one = RationalZ.one()
    z = one.scale_monomial(0, 1)
    f = one / (one - z)
    assert simple_pole_residue(f, L) == 0


def test_simple_pole_zeta_value(curves):
    c = curves[2]
    integrand = zeta_eval(c, 0, 1).scale_monomial(0, -1)
    assert simple_pole_residue(integrand, L**-1) == zeta_star(c, 1, 0)


def test_higher_order_pole_rejected():
    one = RationalZ.one()
    z = one.scale_monomial(0, 1)
    f = one / ((one - z) * (one - z))
    with pytest.raises(HigherOrderPoleError):
        simple_pole_residue(f, ONE)


def test_residue_limit_oracle(curves):
    # single-pole inputs built from the zeta numerator: the products
    # A_d x^{d+1} stabilize exactly and give the residue
    for g in (0, 1, 2):
        c = curves[g]
        one = RationalZ.one()
        z = one.scale_monomial(0, 1)
        p_poly = RationalZ.from_z_poly({k: co for k, co in enumerate(c.p_num)})
        lz = one.scale_monomial(1, 1)  # L z
        f = p_poly / (one - lz)
        series = f.series(2 * g + 6)
        limit = stabilized_residue_limit(series, L**-1)
        assert limit is not None
        assert limit == simple_pole_residue(f, L**-1)

        f2 = p_poly / (one - z)
        series2 = f2.series(2 * g + 6)
        limit2 = stabilized_residue_limit(series2, ONE)
        assert limit2 is not None
        assert limit2 == simple_pole_residue(f2, ONE)


def test_residue_limit_requires_stabilization(curves):
    # the two-pole zeta function does not stabilize exactly at z = 1/L
    c = curves[1]
    series = zeta_eval(c, 0, 1).series(8)
    assert stabilized_residue_limit(series, L**-1) is None


# ---------------------------------------------------------------------------
# golden regression forms
# ---------------------------------------------------------------------------


def _canonical_string(value) -> str:
    return f"({value.num})/({value.den})"


def golden_payload(curves):
    payload = {"l_mot": {}, "res_lambda": {}}
    for g in (0, 1, 2):
        for n in (1, 2, 3):
            payload["l_mot"][f"g{g}_n{n}"] = _canonical_string(l_mot(curves[g], n))
        for parts in [(1,), (2,), (1, 1), (3,), (2, 1), (1, 1, 1)]:
            key = f"g{g}_" + "-".join(map(str, parts))
            payload["res_lambda"][key] = _canonical_string(
                res_lambda(curves[g], Partition(parts))
            )
    return payload


def test_golden_forms(curves):
    payload = golden_payload(curves)
    if not GOLDEN.exists():
        GOLDEN.parent.mkdir(parents=True, exist_ok=True)
        GOLDEN.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        pytest.skip("golden file created; rerun to compare")
    stored = json.loads(GOLDEN.read_text())
    assert payload == stored
