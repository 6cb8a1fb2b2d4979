"""Internal sparse-polynomial kernel.

Thin layer over :mod:`sympy.polys.rings` providing

* the shared coefficient rings ZZ[u, v], ZZ[u, v, z] and ZZ[u, v, z1..zn],
* canonicalization of polynomial fractions (joint primitivity, sign),
* gcd with cheap fast paths for the shapes that dominate this code base,
* a fast exact-division routine for binomial divisors (the bottleneck of the
  symmetrized residue kernel; sympy's generic division is ~100x slower here),
* exponent-remapping helpers used for Adams operations and monomial
  substitutions.

Everything here treats sympy ``PolyElement`` values as immutable; no routine
mutates its arguments.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from math import gcd as int_gcd

from sympy.polys.domains import ZZ
from sympy.polys.orderings import grlex
from sympy.polys.rings import ring

from .errors import ZeroDenominatorError

# Coefficient ring of motivic classes: sparse integer polynomials in (u, v),
# graded lexicographic order with u > v.
RING_UV, POLY_U, POLY_V = ring("u,v", ZZ, order=grlex)
POLY_L = POLY_U * POLY_V

# One formal series/fraction variable z on top of (u, v).
RING_UVZ, POLY_U3, POLY_V3, POLY_Z3 = ring("u,v,z", ZZ, order=grlex)
POLY_L3 = POLY_U3 * POLY_V3

# Deformation ring for the residue kernel: one path parameter t plus the
# series variable z.
RING_UVTZ = ring("u,v,t,z", ZZ, order=grlex)[0]


@lru_cache(maxsize=None)
def ring_with_zs(n: int):
    """Return (ring, [z_1..z_n generators]) for ZZ[u, v, z1..zn]."""
    names = "u,v," + ",".join(f"z{i}" for i in range(1, n + 1))
    result = ring(names, ZZ, order=grlex)
    return result[0], list(result[3:])


def is_monomial(p) -> bool:
    return len(p) == 1


def poly_gcd(f, g):
    """gcd over ZZ[...], positive leading coefficient, with fast paths."""
    R = f.ring
    if not f:
        return _abs_lc(g)
    if not g:
        return _abs_lc(f)
    if f == g:
        return _abs_lc(f)
    one = R.one
    if is_monomial(f) or is_monomial(g):
        # gcd of a monomial with anything is a monomial: componentwise
        # minimum exponents and the integer gcd of all coefficients.
        c = 0
        for coeff in f.values():
            c = int_gcd(c, int(coeff))
        for coeff in g.values():
            c = int_gcd(c, int(coeff))
        exps = None
        for p in (f, g):
            for mono in p:
                exps = mono if exps is None else tuple(map(min, exps, mono))
        return R.from_dict({exps: c})
    if f == one or g == one or f == -one or g == -one:
        return one
    return _abs_lc(f.gcd(g))


def _abs_lc(p):
    return -p if p and p.LC < 0 else p


def exact_quo(f, g):
    """Exact quotient f/g; g must divide f."""
    if g == g.ring.one:
        return f
    if len(g) <= 2:
        q = binomial_quo(f, g)
        if q is None:
            raise ValueError("inexact division")
        return q
    return f.exquo(g)


def canon_fraction(num, den):
    """Canonicalize a polynomial fraction num/den over a common ring.

    Output invariants: gcd(num, den) = 1, the integer contents of the pair
    are jointly 1, and den has positive leading coefficient in the ring
    order.  The zero class is (0, 1).
    """
    R = num.ring
    if not den:
        raise ZeroDenominatorError("denominator is the zero polynomial")
    if not num:
        return R.zero, R.one
    g = poly_gcd(num, den)
    if g != R.one:
        num = exact_quo(num, g)
        den = exact_quo(den, g)
    cn = num.content()
    cd = den.content()
    c = int_gcd(int(cn), int(cd))
    if c > 1:
        num = num.quo_ground(c)
        den = den.quo_ground(c)
    if den.LC < 0:
        num, den = -num, -den
    return num, den


def normalize_coprime(num, den):
    """Content/sign normalization for a fraction already known coprime."""
    if not den:
        raise ZeroDenominatorError("denominator is the zero polynomial")
    if not num:
        return num.ring.zero, num.ring.one
    cn = num.content()
    cd = den.content()
    c = int_gcd(int(cn), int(cd))
    if c > 1:
        num = num.quo_ground(c)
        den = den.quo_ground(c)
    if den.LC < 0:
        num, den = -num, -den
    return num, den


def _heap_key(expv):
    # max-first graded lexicographic key for a min-heap
    return (-sum(expv), tuple(-e for e in expv))


def binomial_quo(f, d):
    """Exact division of f by a 1- or 2-term divisor d, or None if inexact.

    Requires the leading coefficient of d (graded lex) to be a unit; all
    divisors arising from the residue kernel (differences of variables
    scaled by u, v or uv, and 1 - z_i factors) satisfy this.  Falls back to
    generic division otherwise.
    """
    R = f.ring
    if not d:
        raise ZeroDenominatorError("division by zero polynomial")
    if not f:
        return R.zero
    terms = sorted(d.terms(), key=lambda t: _heap_key(t[0]))
    m1, c1 = terms[0]
    c1 = int(c1)
    if c1 not in (1, -1):
        q, r = divmod(f, d)
        return q if not r else None
    rest = terms[1] if len(terms) > 1 else None
    work = {mono: int(coeff) for mono, coeff in f.terms()}
    heap = [_heap_key(mono) for mono in work]
    heapq.heapify(heap)
    quo: dict = {}
    while heap:
        key = heapq.heappop(heap)
        expv = tuple(-e for e in key[1])
        coeff = work.pop(expv, 0)
        if not coeff:
            continue
        qe = tuple(a - b for a, b in zip(expv, m1))
        if any(e < 0 for e in qe):
            return None
        qc = coeff * c1  # c1 is +-1
        quo[qe] = quo.get(qe, 0) + qc
        if rest is not None:
            m2, c2 = rest
            te = tuple(a + b for a, b in zip(qe, m2))
            old = work.get(te, 0)
            new = old - qc * int(c2)
            if new:
                if not old:
                    heapq.heappush(heap, _heap_key(te))
                work[te] = new
            elif old:
                del work[te]
    return R.from_dict(quo)


def binomial_divides(d, f) -> bool:
    """Exact divisibility test of f by a 1- or 2-term divisor, in O(|f|).

    For a monomial divisor this is an exponent scan.  For a binomial
    c1*M1 + c2*M2 with coprime monomials and unit c1, divisibility is
    equivalent to f vanishing under the substitution M1 -> -c2/c1 * M2,
    which is evaluated by merging exponent dictionaries (the kernel of that
    evaluation map is exactly the ideal generated by the divisor).  Falls
    back to full division for shapes outside this family.
    """
    if not f:
        return True
    terms = sorted(d.terms(), key=lambda t: _heap_key(t[0]))
    if len(terms) == 1:
        m1, c1 = terms[0]
        c1 = abs(int(c1))
        for mono, coeff in f.terms():
            if any(a < b for a, b in zip(mono, m1)):
                return False
            if c1 != 1 and int(coeff) % c1:
                return False
        return True
    (m1, c1), (m2, c2) = terms
    c1, c2 = int(c1), int(c2)
    if abs(c1) != 1 or any(a and b for a, b in zip(m1, m2)):
        q, r = divmod(f, d)
        return not r
    # f mod (c1 M1 + c2 M2): rewrite every M1-multiple via M1 = -c2/c1 M2;
    # iterate since the image may again contain M1-multiples
    ratio = -c2 * c1  # c1 in {1, -1}
    work = {mono: int(coeff) for mono, coeff in f.terms()}
    while True:
        acc: dict = {}
        changed = False
        for mono, coeff in work.items():
            k = min(
                (a // b) for a, b in zip(mono, m1) if b
            ) if any(m1) else 0
            if k:
                changed = True
                new_mono = tuple(
                    a - k * b + k * c for a, b, c in zip(mono, m1, m2)
                )
                coeff = coeff * ratio**k
            else:
                new_mono = mono
            acc[new_mono] = acc.get(new_mono, 0) + coeff
        work = {m: c for m, c in acc.items() if c}
        if not work:
            return True
        if not changed:
            return False


def map_exponents(p, out_ring, fn):
    """Rebuild p in out_ring, sending each exponent vector through fn.

    fn may merge monomials; coefficients of coinciding images are added.
    """
    acc: dict = {}
    for mono, coeff in p.terms():
        target = fn(mono)
        acc[target] = acc.get(target, 0) + int(coeff)
    return out_ring.from_dict({m: c for m, c in acc.items() if c})


def uv_to_uvz(p):
    """Embed ZZ[u,v] into ZZ[u,v,z]."""
    return map_exponents(p, RING_UVZ, lambda m: (m[0], m[1], 0))


def z_coefficients(p):
    """Split p in ZZ[u,v,z] into {z-degree: coefficient in ZZ[u,v]}."""
    out: dict = {}
    for (eu, ev, ez), coeff in p.terms():
        out.setdefault(ez, {})[(eu, ev)] = int(coeff)
    return {ez: RING_UV.from_dict(d) for ez, d in sorted(out.items())}


def from_z_coefficients(coeffs):
    """Inverse of z_coefficients: {z-degree: ZZ[u,v] poly} -> ZZ[u,v,z]."""
    acc: dict = {}
    for ez, p in coeffs.items():
        for (eu, ev), c in p.terms():
            acc[(eu, ev, ez)] = int(c)
    return RING_UVZ.from_dict(acc)
