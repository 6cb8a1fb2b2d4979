"""Curve models and zeta-function machinery.

A smooth projective curve of genus g enters every computation only through
its zeta data, realized exactly: the numerator of the zeta function is
P(T) = (1 - uT)^g (1 - vT)^g, the class of the curve is [X] = 1 - gu - gv
+ uv, the Jacobian class is [Jac] = P(1) = (1 - u)^g (1 - v)^g, and the
Picard-stack class is [Jac]/(L - 1).

The zeta function itself is zeta(t) = P(t) / ((1 - t)(1 - L t)), a rational
function that can be evaluated at arguments L^a z^b.  It satisfies the
functional equation zeta(1/(L z)) = L^{1-g} z^{2-2g} zeta(z), which is
verified exactly at construction time, together with P(0) = 1, the top term
L^g T^{2g}, and the specialization P(1/L) = L^{-g} P(1).

The degree-one divisor hypothesis used in the geometric setting is vacuous
in this realization; it is recorded here for completeness.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._poly import RING_UV
from .errors import NegativeGenusError, PoleAtArgumentError
from .exactring import L, MotClass, ONE, U, V, ZERO
from .plethystic import GradedSeries, exp_pleth
from .rational import RationalZ, SeriesZ

__all__ = ["CurveModel", "make_curve", "zeta_eval", "zeta_star", "zeta_of_class", "vol"]


@dataclass(frozen=True)
class CurveModel:
    """Genus plus derived zeta data of a curve.

    p_num holds the coefficients of the zeta numerator P as a tuple of
    motivic classes, constant term first.
    """

    genus: int
    p_num: tuple[MotClass, ...]
    class_of_x: MotClass
    jac: MotClass
    pic_stack: MotClass

    def p_at(self, x: MotClass) -> MotClass:
        """Evaluate the zeta numerator P at a constant argument."""
        acc = ZERO
        for c in reversed(self.p_num):
            acc = acc * x + c
        return acc

    def __repr__(self):
        return f"CurveModel(genus={self.genus})"


def make_curve(g: int) -> CurveModel:
    """Build the curve model of genus g and check its zeta invariants."""
    if not isinstance(g, int) or g < 0:
        raise NegativeGenusError(f"genus must be a nonnegative integer, got {g}")
    # P(T) = (1 - uT)^g (1 - vT)^g, expanded over the class ring
    coeffs = [ONE]
    for root in [U] * g + [V] * g:
        nxt = [ZERO] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k] = nxt[k] + c
            nxt[k + 1] = nxt[k + 1] - root * c
        coeffs = nxt
    p_num = tuple(coeffs)
    curve = CurveModel(
        genus=g,
        p_num=p_num,
        class_of_x=ONE - g * U - g * V + L,
        jac=((ONE - U) * (ONE - V)) ** g,
        pic_stack=((ONE - U) * (ONE - V)) ** g / (L - 1),
    )
    _check_invariants(curve)
    return curve


def _check_invariants(curve: CurveModel) -> None:
    g = curve.genus
    assert curve.p_num[0] == ONE, "zeta numerator must have constant term 1"
    assert len(curve.p_num) == 2 * g + 1 and curve.p_num[-1] == L**g, (
        "zeta numerator must have top term L^g T^(2g)"
    )
    assert curve.p_at(ONE) == curve.jac
    # specialization P(1/L) = L^{-g} P(1)
    assert curve.p_at(L**-1) == L**-g * curve.jac
    # functional equation zeta(1/(Lz)) = L^{1-g} z^{2-2g} zeta(z)
    zeta = zeta_eval(curve, 0, 1)
    lhs = zeta.substitute_z_inverse_l()
    rhs = zeta.scale_monomial(1 - g, 2 - 2 * g)
    assert lhs == rhs, "functional equation failed"


def zeta_eval(curve: CurveModel, a: int, b: int):
    """Evaluate the zeta function at L^a z^b.

    For b > 0 returns a rational function of z; for b = 0 returns the
    constant class zeta(L^a), which exists and is invertible exactly when
    a is not 0 or -1 (the two poles).
    """
    if b < 0:
        raise ValueError("z-exponent must be nonnegative")
    if b == 0:
        if a in (0, -1):
            raise PoleAtArgumentError(f"zeta has a pole at L^{a}")
        x = L**a
        num = curve.p_at(x)
        den = (ONE - x) * (ONE - L * x)
        return num / den
    base = RationalZ.from_z_poly({k: c for k, c in enumerate(curve.p_num)})
    num = base.substitute_z(a, b)
    one = RationalZ.one()
    den = (one - one.scale_monomial(a, b)) * (one - one.scale_monomial(a + 1, b))
    return num / den


def zeta_star(curve: CurveModel, p: int, q: int):
    """Regularized zeta value at L^{-p} z^q.

    Away from the poles this is the plain evaluation; at the two poles
    (p, q) = (1, 0) and (0, 0) it is the residue of zeta(z) dz/z at z = 1/L
    and z = 1 respectively, which evaluates to P(1/L)/(1 - 1/L) and
    P(1)/(1 - L).
    """
    if p < 0 or q < 0:
        raise ValueError("zeta_star arguments must be nonnegative")
    if q > 0 or p > 1:
        return zeta_eval(curve, -p, q)
    if (p, q) == (1, 0):
        return curve.p_at(L**-1) / (ONE - L**-1)
    return curve.p_at(ONE) / (ONE - L)


def zeta_of_class(a: MotClass, order: int) -> SeriesZ:
    """Zeta series of an arbitrary class: Exp(a z) truncated at z^order.

    The coefficient of z^n realizes the n-th symmetric power of a.  Additive
    in a, and compatible with L-twists: the series of L a equals the series
    of a with z replaced by L z.
    """
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    seed = GradedSeries({(0, 1): a}, r_max=0, d_max=order)
    expanded = exp_pleth(seed)
    return SeriesZ(tuple(expanded.get(0, d) for d in range(order + 1)))


def vol(curve: CurveModel, r: int) -> MotClass:
    """Volume class of the rank-r bundle stack.

    vol_r = L^{(g-1)(r^2-1)} [Jac] zeta(L^{-2}) ... zeta(L^{-r}) / (L - 1).
    """
    if r < 1:
        raise ValueError("rank must be positive")
    g = curve.genus
    acc = L ** ((g - 1) * (r * r - 1)) * curve.jac / (L - 1)
    for i in range(2, r + 1):
        acc = acc * zeta_eval(curve, -i, 0)
    return acc
