"""Plethystic calculus on truncated (w, z)-graded series.

A :class:`GradedSeries` is a truncated power series in two variables w
(tracking rank) and z (tracking degree) with motivic-class coefficients,
supported on pairs (r, d) with r, d >= 0.  The plethystic exponential Exp
sends additive series with vanishing constant term to multiplicative series
with constant term 1; Log is its inverse; Pow(f, A) = Exp(A Log f) defines
the power structure with motivic exponents.  The Adams operations act on a
series by scaling both gradings and applying the coefficient-wise Adams
endomorphism.

Truncation is explicit: every series carries (r_max, d_max), arithmetic
carries the minimum of the operand truncations, and no operation silently
extends validity.  All values are immutable and all operations pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd as int_gcd
from typing import Mapping

from sympy import mobius

from .errors import ConstantTermNotOneError, KeyOffRayError, NonzeroConstantTermError
from .exactring import MotClass, ONE, ZERO, adams

__all__ = [
    "GradedSeries",
    "multiply",
    "series_adams",
    "exp_pleth",
    "log_pleth",
    "pow_pleth",
    "ray_exp",
]


@dataclass(frozen=True)
class GradedSeries:
    """Truncated series sum_{r,d} c_{r,d} w^r z^d over motivic classes.

    coeffs stores only nonzero canonical coefficients; absent keys are zero.
    """

    coeffs: Mapping[tuple[int, int], MotClass] = field(default_factory=dict)
    r_max: int = 0
    d_max: int = 0

    def __post_init__(self):
        clean = {
            k: c
            for k, c in self.coeffs.items()
            if c and 0 <= k[0] <= self.r_max and 0 <= k[1] <= self.d_max
        }
        object.__setattr__(self, "coeffs", clean)

    @staticmethod
    def from_dict(coeffs, r_max: int, d_max: int) -> "GradedSeries":
        return GradedSeries(dict(coeffs), r_max, d_max)

    @staticmethod
    def unit(r_max: int, d_max: int) -> "GradedSeries":
        return GradedSeries({(0, 0): ONE}, r_max, d_max)

    def get(self, r: int, d: int) -> MotClass:
        return self.coeffs.get((r, d), ZERO)

    def __eq__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        return (
            self.r_max == other.r_max
            and self.d_max == other.d_max
            and self.coeffs == other.coeffs
        )

    def __add__(self, other):
        if not isinstance(other, GradedSeries):
            return NotImplemented
        r_max = min(self.r_max, other.r_max)
        d_max = min(self.d_max, other.d_max)
        keys = set(self.coeffs) | set(other.coeffs)
        return GradedSeries(
            {k: self.get(*k) + other.get(*k) for k in keys}, r_max, d_max
        )

    def __sub__(self, other):
        return self + other.scale(-ONE)

    def scale(self, a: MotClass | int) -> "GradedSeries":
        if isinstance(a, int):
            a = MotClass._coerce(a)
        return GradedSeries(
            {k: a * c for k, c in self.coeffs.items()}, self.r_max, self.d_max
        )

    def truncate(self, r_max: int, d_max: int) -> "GradedSeries":
        return GradedSeries(self.coeffs, min(self.r_max, r_max), min(self.d_max, d_max))

    def same_coefficients(self, other: "GradedSeries") -> bool:
        """Coefficientwise equality on the common truncation box."""
        r_max = min(self.r_max, other.r_max)
        d_max = min(self.d_max, other.d_max)
        for r in range(r_max + 1):
            for d in range(d_max + 1):
                if self.get(r, d) != other.get(r, d):
                    return False
        return True

    def __repr__(self):
        return f"GradedSeries({len(self.coeffs)} terms; r_max={self.r_max}, d_max={self.d_max})"


def multiply(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    """Cauchy product, truncated to the minimum of the operand truncations."""
    r_max = min(f.r_max, g.r_max)
    d_max = min(f.d_max, g.d_max)
    out: dict[tuple[int, int], MotClass] = {}
    for (r1, d1), c1 in f.coeffs.items():
        if r1 > r_max or d1 > d_max:
            continue
        for (r2, d2), c2 in g.coeffs.items():
            r, d = r1 + r2, d1 + d2
            if r > r_max or d > d_max:
                continue
            prod = c1 * c2
            prev = out.get((r, d))
            out[(r, d)] = prod if prev is None else prev + prod
    return GradedSeries(out, r_max, d_max)


def series_adams(n: int, f: GradedSeries) -> GradedSeries:
    """Adams operation on a series: (r, d) -> (nr, nd) with coefficientwise
    Adams endomorphism.  The validity box scales by n."""
    if n < 1:
        raise ValueError("Adams operations are defined for n >= 1")
    if n == 1:
        return f
    return GradedSeries(
        {(n * r, n * d): adams(n, c) for (r, d), c in f.coeffs.items()},
        n * f.r_max,
        n * f.d_max,
    )


def _formal_exp(g: GradedSeries) -> GradedSeries:
    """exp of a series with zero constant term (ordinary exponential)."""
    r_max, d_max = g.r_max, g.d_max
    result = GradedSeries.unit(r_max, d_max)
    power = GradedSeries.unit(r_max, d_max)
    kfact = 1
    for k in range(1, r_max + d_max + 1):
        power = multiply(power, g)
        if not power.coeffs:
            break
        kfact *= k
        result = result + power.scale(_inverse_int(kfact))
    return result


def _formal_log(f: GradedSeries) -> GradedSeries:
    """log of a series with constant term 1 (ordinary logarithm)."""
    r_max, d_max = f.r_max, f.d_max
    h = f - GradedSeries.unit(r_max, d_max)
    result = GradedSeries({}, r_max, d_max)
    power = GradedSeries.unit(r_max, d_max)
    for k in range(1, r_max + d_max + 1):
        power = multiply(power, h)
        if not power.coeffs:
            break
        sign = 1 if k % 2 == 1 else -1
        result = result + power.scale(_inverse_int(sign * k))
    return result


def _inverse_int(n: int) -> MotClass:
    return ONE / MotClass._coerce(n)


def exp_pleth(f: GradedSeries) -> GradedSeries:
    """Plethystic exponential: exp(sum_{n>=1} psi_n(f)/n), truncated.

    Requires the constant term of f to vanish.  Group-like: Exp(f + g) =
    Exp(f) Exp(g); on a single class A at (r, d) it reproduces the zeta
    series of A in the variable w^r z^d.
    """
    if f.get(0, 0):
        raise NonzeroConstantTermError("Exp requires a vanishing constant term")
    r_max, d_max = f.r_max, f.d_max
    arg = GradedSeries({}, r_max, d_max)
    for n in range(1, max(r_max, d_max) + 1):
        piece = series_adams(n, f).truncate(r_max, d_max)
        if not piece.coeffs:
            continue
        arg = arg + piece.scale(_inverse_int(n))
    return _formal_exp(arg)


def log_pleth(f: GradedSeries) -> GradedSeries:
    """Plethystic logarithm, inverse to :func:`exp_pleth`.

    Computed as sum_{n>=1} (mu(n)/n) psi_n(log f) where mu is the Moebius
    function; requires constant term 1.
    """
    if f.get(0, 0) != ONE:
        raise ConstantTermNotOneError("Log requires constant term 1")
    r_max, d_max = f.r_max, f.d_max
    flog = _formal_log(f)
    result = GradedSeries({}, r_max, d_max)
    for n in range(1, max(r_max, d_max) + 1):
        mu = int(mobius(n))
        if mu == 0:
            continue
        piece = series_adams(n, flog).truncate(r_max, d_max)
        if not piece.coeffs:
            continue
        result = result + piece.scale(_inverse_int(n) * mu)
    return result


def pow_pleth(f: GradedSeries, a: MotClass) -> GradedSeries:
    """Power structure Pow(f, A) = Exp(A Log f)."""
    return exp_pleth(log_pleth(f).scale(a))


def ray_exp(
    b: Mapping[tuple[int, int], MotClass],
    tau: Fraction | int,
    r_max: int,
    d_max: int,
):
    """One-variable plethystic exponential along the slope ray d/r = tau.

    b maps ray points (r, d) with r > 0 to classes; the result maps ray
    points to the coefficients of Exp(sum b_{r,d} t^k) written in the single
    variable t = w^{r0} z^{d0} attached to the primitive ray vector (r0, d0).
    Raises KeyOffRayError if some key of b lies off the ray.
    """
    tau = Fraction(tau)
    if tau < 0:
        raise KeyOffRayError("slopes are nonnegative")
    if tau == 0:
        r0, d0 = 1, 0
    else:
        r0, d0 = tau.denominator, tau.numerator
    k_max = r_max // r0
    if d0 > 0:
        k_max = min(k_max, d_max // d0)
    series: dict[int, MotClass] = {}
    for (r, d), c in b.items():
        if r <= 0 or Fraction(d, r) != tau:
            raise KeyOffRayError(f"({r}, {d}) is not on the ray of slope {tau}")
        k = r // r0
        if k <= k_max and c:
            series[k] = series.get(k, ZERO) + c
    # arg = sum_{n>=1} psi_n(b)/n in the ray variable t
    arg: dict[int, MotClass] = {}
    for n in range(1, k_max + 1):
        inv_n = _inverse_int(n)
        for k, c in series.items():
            nk = n * k
            if nk > k_max:
                continue
            term = adams(n, c) * inv_n
            arg[nk] = arg.get(nk, ZERO) + term
    # one-variable exp
    out = [ZERO] * (k_max + 1)
    out[0] = ONE
    power = [ZERO] * (k_max + 1)
    power[0] = ONE
    kfact = 1
    for k in range(1, k_max + 1):
        nxt = [ZERO] * (k_max + 1)
        for i, c in enumerate(power):
            if not c:
                continue
            for j, a in arg.items():
                if i + j <= k_max:
                    nxt[i + j] = nxt[i + j] + c * a
        power = nxt
        if not any(power):
            break
        kfact *= k
        inv = _inverse_int(kfact)
        for i, c in enumerate(power):
            if c:
                out[i] = out[i] + c * inv
    return {
        (k * r0, k * d0): out[k]
        for k in range(1, k_max + 1)
        if out[k]
    }
