"""Exact arithmetic in the coefficient ring of motivic classes.

A :class:`MotClass` is a rational function in two variables (u, v) with
rational coefficients, stored as a reduced pair of integer polynomials.  The
class of the affine line is the monomial L = uv; the classes of all the
stacks handled by this package (general linear groups, nilpotent cones,
Jacobians, zeta values at powers of L, ...) live in this ring.

Representation caveat, documented once here and in the README: the ambient
completed ring of motivic classes is not directly representable, so we
compute in its Hodge (E-polynomial) realization.  Every identity verified by
this package is an exact identity of rational functions in (u, v); it is a
necessary condition for the corresponding identity of motivic classes.

Canonical form: gcd(numerator, denominator) = 1, the pair of integer
polynomials is jointly primitive, and the denominator has positive leading
coefficient under graded lex order with u > v.  Equality of classes is
literal equality of canonical forms.  Values are immutable; all operations
are pure functions, safe to share between workers.
"""

from __future__ import annotations

from math import gcd as int_gcd

from . import _poly
from ._poly import POLY_L, POLY_U, POLY_V, RING_UV, canon_fraction, exact_quo, poly_gcd
from .errors import ZeroDenominatorError

__all__ = [
    "MotClass",
    "make_class",
    "adams",
    "gl_class",
    "nilcone_class",
    "ZERO",
    "ONE",
    "L",
    "U",
    "V",
]


class MotClass:
    """A reduced rational function in (u, v) over the rationals.

    Do not call the constructor with non-canonical data; use
    :func:`make_class` or ring arithmetic on the exported atoms L, U, V.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den, _canonical=False):
        if not _canonical:
            num, den = canon_fraction(num, den)
        self.num = num
        self.den = den
        self._hash = None

    # -- construction helpers ------------------------------------------------

    @staticmethod
    def _coerce(x):
        if isinstance(x, MotClass):
            return x
        if isinstance(x, int):
            return MotClass(RING_UV(x), RING_UV.one, _canonical=(x != 0))
        if getattr(x, "ring", None) is RING_UV:
            return MotClass(x, RING_UV.one)
        return NotImplemented

    # -- ring structure ------------------------------------------------------

    def __add__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if d1 == d2:
            return MotClass(n1 + n2, d1)
        g = poly_gcd(d1, d2)
        if g == RING_UV.one:
            # coprime denominators: the sum is automatically reduced
            return MotClass._normalized(n1 * d2 + n2 * d1, d1 * d2)
        # Henrici addition: only the common factor g can cancel
        d2r = exact_quo(d2, g)
        num = n1 * d2r + n2 * exact_quo(d1, g)
        h = poly_gcd(num, g)
        if h != RING_UV.one:
            num = exact_quo(num, h)
        return MotClass._normalized(num, exact_quo(d1, h) * d2r)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        return MotClass(-self.num, self.den, _canonical=True)

    def __sub__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not n1 or not n2:
            return ZERO
        g1 = poly_gcd(n1, d2)
        g2 = poly_gcd(n2, d1)
        if g1 != RING_UV.one:
            n1 = exact_quo(n1, g1)
            d2 = exact_quo(d2, g1)
        if g2 != RING_UV.one:
            n2 = exact_quo(n2, g2)
            d1 = exact_quo(d1, g2)
        return MotClass._normalized(n1 * n2, d1 * d2)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, n: int):
        if n == 0:
            return ONE
        base = self if n > 0 else self.inverse()
        k = abs(n)
        # canonical form is preserved by powers (unique factorization)
        num, den = base.num**k, base.den**k
        return MotClass(num, den, _canonical=True)

    def inverse(self):
        if not self.num:
            raise ZeroDenominatorError("division by the zero class")
        num, den = self.den, self.num
        if den.LC < 0:
            num, den = -num, -den
        return MotClass(num, den, _canonical=True)

    @staticmethod
    def _normalized(num, den):
        """Finish an arithmetic step: contents and sign only (gcd done)."""
        if not num:
            return ZERO
        cn, cd = int(num.content()), int(den.content())
        c = int_gcd(cn, cd)
        if c > 1:
            num = num.quo_ground(c)
            den = den.quo_ground(c)
        if den.LC < 0:
            num, den = -num, -den
        return MotClass(num, den, _canonical=True)

    # -- comparisons ---------------------------------------------------------

    def __eq__(self, other):
        other = MotClass._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return bool(self.num)

    # -- structure queries ---------------------------------------------------

    @property
    def is_polynomial(self) -> bool:
        return self.den == RING_UV.one

    def as_l_polynomial(self):
        """Return {k: rational coeff} if this class is a Laurent-free
        polynomial in L = uv with integer coefficients scaled by 1/content,
        else None.  Used by renderers that group by powers of L."""
        pairs = []
        for poly in (self.num, self.den):
            d: dict = {}
            for (eu, ev), c in poly.terms():
                if eu != ev:
                    return None
                d[eu] = int(c)
            pairs.append(d)
        return pairs

    def __repr__(self):
        if self.den == RING_UV.one:
            return f"MotClass({self.num})"
        return f"MotClass(({self.num})/({self.den}))"


def make_class(num, den=1) -> MotClass:
    """Build the canonical class num/den from integer polynomial data.

    Accepts python ints, polynomials in the (u, v) ring, MotClass values
    (whose fraction is folded in), or {(u_exp, v_exp): int} dictionaries.
    Raises ZeroDenominatorError when den = 0.  Idempotent on canonical data.
    """
    num = _to_fraction(num)
    den = _to_fraction(den)
    combined_num = num[0] * den[1]
    combined_den = num[1] * den[0]
    return MotClass(combined_num, combined_den)


def _to_fraction(x):
    if isinstance(x, MotClass):
        return x.num, x.den
    if isinstance(x, int):
        return RING_UV(x), RING_UV.one
    if isinstance(x, dict):
        return RING_UV.from_dict({k: int(c) for k, c in x.items()}), RING_UV.one
    if getattr(x, "ring", None) is RING_UV:
        return x, RING_UV.one
    raise TypeError(f"cannot build a motivic class from {type(x).__name__}")


ZERO = MotClass(RING_UV.zero, RING_UV.one, _canonical=True)
ONE = MotClass(RING_UV.one, RING_UV.one, _canonical=True)
L = MotClass(POLY_L, RING_UV.one, _canonical=True)
U = MotClass(POLY_U, RING_UV.one, _canonical=True)
V = MotClass(POLY_V, RING_UV.one, _canonical=True)


def adams(n: int, x: MotClass) -> MotClass:
    """n-th Adams operation: substitute u -> u^n, v -> v^n.

    A ring endomorphism for every n >= 1; adams(1, x) = x.
    """
    if n < 1:
        raise ValueError("Adams operations are defined for n >= 1")
    if n == 1:
        return x
    scale = lambda m: (n * m[0], n * m[1])
    num = _poly.map_exponents(x.num, RING_UV, scale)
    den = _poly.map_exponents(x.den, RING_UV, scale)
    # coprimality can in principle be lost under monomial substitution;
    # re-canonicalize to stay safe
    return MotClass(num, den)


def gl_class(n: int) -> MotClass:
    """Class of the general linear group of rank n: prod_{i<n} (L^n - L^i)."""
    if n < 0:
        raise ValueError("rank must be nonnegative")
    acc = RING_UV.one
    top = POLY_L**n
    for i in range(n):
        acc *= top - POLY_L**i
    return MotClass(acc, RING_UV.one)


def nilcone_class(d: int) -> MotClass:
    """Stack class of d-dimensional vector spaces with nilpotent endomorphism.

    Equals L^{d(d-1)} / prod_{i<d} (L^d - L^i); the numerator is the class of
    the nilpotent cone and the denominator the class of GL_d.
    """
    if d < 0:
        raise ValueError("dimension must be nonnegative")
    num = POLY_L ** (d * (d - 1))
    den = RING_UV.one
    top = POLY_L**d
    for i in range(d):
        den *= top - POLY_L**i
    return MotClass(num, den)
