"""Rational functions and truncated series over the motivic coefficient ring.

Three value types are defined here and shared by the zeta machinery, the
residue kernel and the assembly pipeline:

* :class:`RationalZ` -- a reduced rational function in one series variable z
  whose coefficients are motivic classes (stored as a fraction of integer
  polynomials in u, v, z);
* :class:`SeriesZ` -- a truncated power series in z over motivic classes;
* :class:`MultiRational` -- a reduced rational function in auxiliary
  variables z_1..z_n over motivic classes, produced by the symmetrized
  residue kernel.

All values are immutable and canonically reduced, so equality is syntactic.
"""

from __future__ import annotations

from . import _poly
from ._poly import (
    POLY_L3,
    RING_UVZ,
    canon_fraction,
    from_z_coefficients,
    uv_to_uvz,
    z_coefficients,
)
from .errors import HigherOrderPoleError, ZeroDenominatorError
from .exactring import MotClass, ONE, ZERO, RING_UV

__all__ = ["RationalZ", "SeriesZ", "MultiRational"]


class RationalZ:
    """Reduced fraction N(u,v,z)/D(u,v,z), viewed as a rational function of z
    over the field of motivic classes.

    Canonical form matches MotClass: gcd(N, D) = 1, jointly primitive integer
    coefficients, positive leading coefficient of D under graded lex.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den, _canonical=False):
        if not _canonical:
            num, den = canon_fraction(num, den)
        self.num = num
        self.den = den

    # -- constructors ---------------------------------------------------------

    @staticmethod
    def from_mot(x: MotClass) -> "RationalZ":
        return RationalZ(uv_to_uvz(x.num), uv_to_uvz(x.den), _canonical=True)

    @staticmethod
    def from_z_poly(coeffs: dict[int, MotClass]) -> "RationalZ":
        """Build a polynomial in z from {degree: MotClass} (clearing the
        coefficient denominators into one global denominator)."""
        den = ONE
        for c in coeffs.values():
            den = den * MotClass(c.den, RING_UV.one, _canonical=True)
        num_parts = {}
        for k, c in coeffs.items():
            scale = _poly.exact_quo(den.num, c.den)
            num_parts[k] = c.num * scale
        num = from_z_coefficients(num_parts)
        return RationalZ(num, uv_to_uvz(den.num))

    @staticmethod
    def one() -> "RationalZ":
        return RationalZ(RING_UVZ.one, RING_UVZ.one, _canonical=True)

    # -- arithmetic ------------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, MotClass):
            other = RationalZ.from_mot(other)
        if not isinstance(other, RationalZ):
            return NotImplemented
        return RationalZ(self.num * other.num, self.den * other.den)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        if isinstance(other, MotClass):
            other = RationalZ.from_mot(other)
        if not isinstance(other, RationalZ):
            return NotImplemented
        return RationalZ(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other):
        if isinstance(other, MotClass):
            other = RationalZ.from_mot(other)
        if not isinstance(other, RationalZ):
            return NotImplemented
        return RationalZ(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __truediv__(self, other):
        if isinstance(other, MotClass):
            other = RationalZ.from_mot(other)
        if not isinstance(other, RationalZ):
            return NotImplemented
        if not other.num:
            raise ZeroDenominatorError("division by zero rational function")
        return RationalZ(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        if isinstance(other, int):
            other = RationalZ(RING_UVZ(other), RING_UVZ.one)
        elif isinstance(other, MotClass):
            other = RationalZ.from_mot(other)
        else:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        if isinstance(other, int):
            other = RationalZ(RING_UVZ(other), RING_UVZ.one)
        if not isinstance(other, RationalZ):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def scale_monomial(self, l_pow: int, z_pow: int) -> "RationalZ":
        """Multiply by L^{l_pow} z^{z_pow} with integer (possibly negative)
        exponents, clearing any Laurent part into the denominator."""
        num, den = self.num, self.den
        if l_pow >= 0:
            num = num * POLY_L3**l_pow
        else:
            den = den * POLY_L3 ** (-l_pow)
        z = RING_UVZ.gens[2]
        if z_pow >= 0:
            num = num * z**z_pow
        else:
            den = den * z ** (-z_pow)
        return RationalZ(num, den)

    def substitute_z(self, a: int, b: int) -> "RationalZ":
        """Substitute z -> L^a z^b (a any integer, b >= 0)."""
        num, mn = _subst_z_monomial(self.num, a, b)
        den, md = _subst_z_monomial(self.den, a, b)
        # the images are L^{-mn} num and L^{-md} den
        out = RationalZ(num, den)
        return out.scale_monomial(md - mn, 0)

    def substitute_z_inverse_l(self) -> "RationalZ":
        """Substitute z -> 1/(L z), clearing Laurent monomials."""
        num, den = self.num, self.den
        dmax = max(
            [m[2] for m in num] + [m[2] for m in den]
        )  # z-degree bound of both
        mapper = lambda m, d=dmax: (m[0] + (d - m[2]), m[1] + (d - m[2]), d - m[2])
        new_num = _poly.map_exponents(num, RING_UVZ, mapper)
        new_den = _poly.map_exponents(den, RING_UVZ, mapper)
        return RationalZ(new_num, new_den)

    # -- analysis ---------------------------------------------------------------

    def constant_term(self) -> MotClass:
        """Value at z = 0; requires the denominator to be nonzero there."""
        nc = z_coefficients(self.num).get(0, RING_UV.zero)
        dc = z_coefficients(self.den).get(0, RING_UV.zero)
        return MotClass(nc, dc)

    def den_at_zero_invertible(self) -> bool:
        return bool(z_coefficients(self.den).get(0, RING_UV.zero))

    def series(self, order: int) -> "SeriesZ":
        """Expand in powers of z through z^order.

        Valid when the denominator is invertible at z = 0; the expansion is
        the geometric-series expansion of the reduced fraction.
        """
        ncoeffs = z_coefficients(self.num)
        dcoeffs = z_coefficients(self.den)
        d0 = dcoeffs.get(0)
        if not d0:
            raise ZeroDenominatorError("fraction has a pole at z = 0")
        d0_class = MotClass(RING_UV.one, d0)
        out = []
        for j in range(order + 1):
            acc = MotClass(ncoeffs.get(j, RING_UV.zero), RING_UV.one)
            for k in range(1, j + 1):
                dk = dcoeffs.get(k)
                if dk is not None and out[j - k]:
                    acc = acc - MotClass(dk, RING_UV.one) * out[j - k]
            out.append(acc * d0_class)
        return SeriesZ(tuple(out))

    def evaluate(self, x: MotClass) -> MotClass:
        """Evaluate at z = x; the denominator must not vanish there."""
        num = _eval_z(self.num, x)
        den = _eval_z(self.den, x)
        if not den:
            raise ZeroDenominatorError("pole at the evaluation point")
        return num / den

    def residue_simple(self, x: MotClass) -> MotClass:
        """Residue at z = x under the sign convention ((x - z) f)|_{z=x}.

        Returns 0 when f is regular at x; raises HigherOrderPoleError when
        the reduced denominator is divisible by (x - z) more than once.
        """
        den_z = {k: MotClass(p, RING_UV.one) for k, p in z_coefficients(self.den).items()}
        quotient, remainder = _divide_by_root(den_z, x)
        if remainder:
            return ZERO  # denominator nonzero at x: regular point
        q_at_x = _eval_class_poly(quotient, x)
        if not q_at_x:
            raise HigherOrderPoleError(f"pole of order >= 2 at {x!r}")
        # with den = (x - z) * (-lead) ... we factored den(z) = (z - x) q(z);
        # (x - z) f = -num / q, so the residue is -num(x)/q(x)
        num_at_x = _eval_z(self.num, x)
        return -num_at_x / q_at_x

    def __repr__(self):
        if self.den == RING_UVZ.one:
            return f"RationalZ({self.num})"
        return f"RationalZ(({self.num})/({self.den}))"


def _subst_z_monomial(p, a, b):
    """z -> L^a z^b on a (u,v,z) polynomial; returns (poly, m) where the true
    image is L^{-m} * poly with m >= 0 chosen minimal to clear negatives."""
    if not p:
        return p, 0
    if a >= 0:
        mapper = lambda m: (m[0] + a * m[2], m[1] + a * m[2], b * m[2])
        return _poly.map_exponents(p, RING_UVZ, mapper), 0
    shift = max(-a * m[2] for m in p)
    mapper = lambda m: (
        m[0] + a * m[2] + shift,
        m[1] + a * m[2] + shift,
        b * m[2],
    )
    return _poly.map_exponents(p, RING_UVZ, mapper), shift


def _eval_z(p, x: MotClass) -> MotClass:
    """Evaluate a (u,v,z) polynomial at z = x by Horner over motivic classes."""
    coeffs = z_coefficients(p)
    if not coeffs:
        return ZERO
    deg = max(coeffs)
    acc = ZERO
    for k in range(deg, -1, -1):
        acc = acc * x
        ck = coeffs.get(k)
        if ck is not None:
            acc = acc + MotClass(ck, RING_UV.one)
    return acc


def _eval_class_poly(coeffs: dict[int, MotClass], x: MotClass) -> MotClass:
    acc = ZERO
    if not coeffs:
        return acc
    for k in range(max(coeffs), -1, -1):
        acc = acc * x
        if k in coeffs:
            acc = acc + coeffs[k]
    return acc


def _divide_by_root(coeffs: dict[int, MotClass], x: MotClass):
    """Divide the class-coefficient polynomial d(z) by (z - x).

    Returns (quotient coefficients, remainder d(x)); d = (z - x) q + d(x).
    """
    if not coeffs:
        return {}, ZERO
    deg = max(coeffs)
    q: dict[int, MotClass] = {}
    carry = ZERO
    for k in range(deg, 0, -1):
        carry = coeffs.get(k, ZERO) + carry * x
        q[k - 1] = carry
    remainder = coeffs.get(0, ZERO) + carry * x
    return {k: c for k, c in q.items() if c}, remainder


class SeriesZ:
    """Truncated power series in z over motivic classes.

    coefficients[d] is the coefficient of z^d; the truncation order is
    len(coefficients) - 1.  Immutable.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients):
        self.coefficients = tuple(coefficients)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    @staticmethod
    def constant(x: MotClass, order: int) -> "SeriesZ":
        return SeriesZ((x,) + (ZERO,) * order)

    def __getitem__(self, d: int) -> MotClass:
        return self.coefficients[d]

    def __len__(self):
        return len(self.coefficients)

    def __iter__(self):
        return iter(self.coefficients)

    def __mul__(self, other):
        if isinstance(other, MotClass):
            return SeriesZ(tuple(c * other for c in self.coefficients))
        if not isinstance(other, SeriesZ):
            return NotImplemented
        order = min(self.order, other.order)
        out = []
        for d in range(order + 1):
            acc = ZERO
            for k in range(d + 1):
                a, b = self.coefficients[k], other.coefficients[d - k]
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return SeriesZ(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __add__(self, other):
        if not isinstance(other, SeriesZ):
            return NotImplemented
        order = min(self.order, other.order)
        return SeriesZ(
            tuple(self.coefficients[d] + other.coefficients[d] for d in range(order + 1))
        )

    def __eq__(self, other):
        if not isinstance(other, SeriesZ):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self):
        return hash(self.coefficients)

    def truncate(self, order: int) -> "SeriesZ":
        if order >= self.order:
            return self
        return SeriesZ(self.coefficients[: order + 1])

    def __repr__(self):
        shown = ", ".join(repr(c) for c in self.coefficients[:4])
        tail = ", ..." if len(self.coefficients) > 4 else ""
        return f"SeriesZ([{shown}{tail}]; order={self.order})"


class MultiRational:
    """Reduced rational function in z_1..z_n over motivic classes.

    Stored as a fraction of integer polynomials in (u, v, z_1..z_n); the
    canonical form is the same as for the other fraction types.
    """

    __slots__ = ("num", "den", "n")

    def __init__(self, num, den, n: int, _canonical=False):
        if not _canonical:
            num, den = canon_fraction(num, den)
        self.num = num
        self.den = den
        self.n = n

    def __eq__(self, other):
        if not isinstance(other, MultiRational):
            return NotImplemented
        return self.n == other.n and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.n, self.num, self.den))

    def permute_variables(self, perm) -> "MultiRational":
        """Apply z_i -> z_{perm[i]} (perm is a 1-based mapping dict/list)."""
        ring_n, _ = _poly.ring_with_zs(self.n)

        def mapper(m):
            out = [m[0], m[1]] + [0] * self.n
            for i in range(1, self.n + 1):
                out[1 + perm[i]] += m[1 + i]
            return tuple(out)

        num = _poly.map_exponents(self.num, ring_n, mapper)
        den = _poly.map_exponents(self.den, ring_n, mapper)
        return MultiRational(num, den, self.n)

    def __repr__(self):
        return f"MultiRational(({self.num})/({self.den}), n={self.n})"
