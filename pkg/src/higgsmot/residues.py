"""The symmetrized rational kernel and its iterated residues.

This module computes the partition-indexed ingredients of the main
generating series:

* ``j_mot`` -- the product over the boxes of a Young diagram of regularized
  zeta values at L^{-1-leg} z^{arm};
* ``l_mot`` -- the symmetrization over the symmetric group S_n of the kernel

      prod_{i<j} zt(z_i/z_j) * prod_{i<n} (1 - L z_{i+1}/z_i)^{-1} * (1 - z_1)^{-1}

  divided by prod_{i<j} zt(z_i/z_j), where zt(x) = x^{1-g} zeta(x) is the
  normalized zeta function;
* ``res_lambda`` -- the iterated residue of ``l_mot`` along the ratios
  z_{m+1}/z_m = L^{-1} within the blocks of a partition, computed by
  clearing the first-order pole factors and substituting z_m -> L^{1-m}
  z^{b(m)} simultaneously (b is the block map);
* ``h_mot`` -- the z-expansion of ``res_lambda``;
* ``simple_pole_residue`` -- one-variable residues with the sign convention
  res_{z=x} f dz = ((x - z) f)|_{z=x}.

Implementation notes.  All permutation terms are held as fractions with
*factored* denominators drawn from a fixed pool of binomials (differences of
z-variables scaled by 1, u, v or uv, the factors 1 - z_i, and monomials).
Non-inverted zeta factors cancel symbolically between the numerator and the
denominator of each term, sums are folded pairwise over a least common
multiple of factor multisets, and the final reduction is trial division by
pool factors, which are irreducible.  This avoids general multivariate gcd
entirely.  The S_n sum is a commutative fold and could be mapped over
workers; all inputs are immutable.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache
from itertools import permutations

from . import _poly
from ._poly import (
    RING_UVZ,
    binomial_divides,
    binomial_quo,
    normalize_coprime,
    ring_with_zs,
)
from .errors import NonInvertibleQError
from .exactring import MotClass, ONE
from .partitions import Partition, arm_leg, block_data
from .rational import MultiRational, RationalZ, SeriesZ
from .curvezeta import CurveModel, zeta_star

__all__ = [
    "j_mot",
    "l_mot",
    "res_lambda",
    "res_lambda_sequential",
    "h_mot",
    "simple_pole_residue",
    "stabilized_residue_limit",
    "symmetrization_invariance_check",
    "MultiRational",
    "SeriesZ",
]


# ---------------------------------------------------------------------------
# factored-fraction helpers
# ---------------------------------------------------------------------------


def _gens(n: int):
    ring_n, zs = ring_with_zs(n)
    u, v = ring_n.gens[0], ring_n.gens[1]
    return ring_n, u, v, [None] + zs  # 1-based z access


def _fold_terms(ring_n, terms):
    """Sum fractions given as (sign, numerator factor list, denominator
    Counter); returns (numerator polynomial, denominator Counter).

    Terms are folded as a balanced tree.  Numerators are kept as a factored
    multiset times an expanded core for as long as possible: when two terms
    are merged, their common numerator factors are pulled out unexpanded,
    and the denominator is cancelled at every merge.  This keeps the
    intermediate sums near the size of the final reduced kernel instead of
    the size of the naive common-denominator numerator.
    """
    items = []
    for sign, num_factors, den in terms:
        factors: Counter = Counter()
        for f in num_factors:
            factors[f] += 1
        items.append((ring_n(sign), factors, +den))
    if not items:
        return ring_n.zero, Counter()
    while len(items) > 1:
        merged = []
        for i in range(0, len(items) - 1, 2):
            merged.append(_merge_pair(ring_n, items[i], items[i + 1]))
        if len(items) % 2:
            merged.append(items[-1])
        items = merged
    core, factors, den = items[0]
    num = core
    for f, k in factors.items():
        num *= f**k
    return _cancel(num, den)


def _merge_pair(ring_n, left, right):
    core1, fac1, den1 = left
    core2, fac2, den2 = right
    union = den1 | den2
    common = fac1 & fac2
    rest1 = core1
    for f, k in ((fac1 - common) + (union - den1)).items():
        rest1 *= f**k
    rest2 = core2
    for f, k in ((fac2 - common) + (union - den2)).items():
        rest2 *= f**k
    core = rest1 + rest2
    # cancel: first against the still-factored common part, then by trial
    # division of the expanded core
    new_den: Counter = Counter()
    for f in sorted(union, key=str):
        k = union[f]
        take = min(k, common[f])
        if take:
            common[f] -= take
            k -= take
        while k > 0 and core and binomial_divides(f, core):
            core = binomial_quo(core, f)
            k -= 1
        if k:
            new_den[f] = k
    return core, +common, new_den


def _cancel(num, den: Counter):
    """Cancel denominator factors dividing the numerator (trial division)."""
    if not num:
        return num, Counter()
    out = Counter()
    for f in sorted(den, key=str):
        k = den[f]
        while k > 0 and binomial_divides(f, num):
            num = binomial_quo(num, f)
            k -= 1
        if k:
            out[f] = k
    return num, out


def _expand(ring_n, den: Counter):
    acc = ring_n.one
    for f, k in den.items():
        acc *= f**k
    return acc


# ---------------------------------------------------------------------------
# the symmetrized kernel
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _l_mot_factored(g: int, n: int):
    """Factored form of the symmetrized kernel for genus g in n variables.

    Each permutation term is assembled from the ratio of zeta factors over
    inverted pairs only: for an inversion (a, b) with a > b,

        zt(z_a/z_b) / zt(z_b/z_a)
            = - NPP(a,b) (z_a - L z_b) / (NPP(b,a) (z_b - L z_a)),

    with NPP(a,b) = (z_b - u z_a)^g (z_b - v z_a)^g, while non-inverted
    pairs cancel identically.
    """
    ring_n, u, v, z = _gens(n)
    lpoly = u * v
    terms = []
    for sigma in permutations(range(1, n + 1)):
        sign = 1
        num_factors = []
        den: Counter = Counter()
        for i in range(n):
            for j in range(i + 1, n):
                a, b = sigma[i], sigma[j]
                if a < b:
                    continue
                sign = -sign
                if g:
                    num_factors += [(z[b] - u * z[a]) ** g, (z[b] - v * z[a]) ** g]
                    den[z[a] - u * z[b]] += g
                    den[z[a] - v * z[b]] += g
                num_factors.append(z[a] - lpoly * z[b])
                den[z[b] - lpoly * z[a]] += 1
        for i in range(n - 1):
            num_factors.append(z[sigma[i]])
            den[z[sigma[i]] - lpoly * z[sigma[i + 1]]] += 1
        den[1 - z[sigma[0]]] += 1
        terms.append((sign, num_factors, +den))
    num, den = _fold_terms(ring_n, terms)
    return _cancel(num, den)


def l_mot(curve: CurveModel, n: int) -> MultiRational:
    """The symmetrized kernel as one reduced rational function in z_1..z_n."""
    if n < 1:
        raise ValueError("the kernel needs at least one variable")
    ring_n, _, _, _ = _gens(n)
    num, den = _l_mot_factored(curve.genus, n)
    nn, dd = normalize_coprime(num, _expand(ring_n, den))
    return MultiRational(nn, dd, n, _canonical=True)


def _within_block_pairs(lam: Partition):
    _, _, block = block_data(lam)
    return [m for m in range(1, lam.length) if block[m - 1] == block[m]]


def _substitute_blocks(poly, n: int, block):
    """Apply z_m -> L^{1-m} z^{b(m)}; returns (poly in (u,v,z), shift) where
    the true image is L^{-shift} * poly."""
    if not poly:
        return RING_UVZ.zero, 0
    shift = max(
        sum((i - 1) * mono[1 + i] for i in range(1, n + 1)) for mono in poly
    )

    def mapper(mono):
        neg = sum((i - 1) * mono[1 + i] for i in range(1, n + 1))
        zdeg = sum(block[i - 1] * mono[1 + i] for i in range(1, n + 1))
        extra = shift - neg
        return (mono[0] + extra, mono[1] + extra, zdeg)

    return _poly.map_exponents(poly, RING_UVZ, mapper), shift


def _deformed_terms(g: int, n: int, block):
    """Permutation terms of the kernel, written directly in the deformed
    coordinates z_i = L^{1-i} z^{b(i)} t^i.

    Each pool factor becomes a two-term polynomial in (u, v, t, z); the
    within-block chain factors (z_j - L z_{j+1}) reduce to a monomial times
    (1 - t), so the pole order along the substitution locus is carried
    entirely by powers of (1 - t).  Yields (sign, numerator factor list,
    denominator Counter) triples; the scalar monomial and L-shift of each
    term are folded into the factor data.
    """
    from ._poly import RING_UVTZ

    def z_vec(i, extra_u=0, extra_v=0):
        # exponent vector (e_u, e_v, e_t, e_z) of the image of z_i scaled
        # by u^extra_u v^extra_v; the L-power 1 - i may be negative
        return (1 - i + extra_u, 1 - i + extra_v, i, block[i - 1])

    def split(vec_a, vec_b):
        """Difference of two image monomials as L^{-s} * mono * primitive.

        Negative L-powers are cleared symmetrically (both u and v shifted
        by the same s), so the discarded prefactor is an exact power of L.
        """
        s = max(0, -vec_a[0], -vec_a[1], -vec_b[0], -vec_b[1])
        a = (vec_a[0] + s, vec_a[1] + s, vec_a[2], vec_a[3])
        b = (vec_b[0] + s, vec_b[1] + s, vec_b[2], vec_b[3])
        common = tuple(map(min, a, b))
        a = tuple(x - c for x, c in zip(a, common))
        b = tuple(x - c for x, c in zip(b, common))
        return RING_UVTZ.from_dict({a: 1, b: -1}), s, common

    for sigma in permutations(range(1, n + 1)):
        sign = 1
        num: list = []
        den: Counter = Counter()
        inv_l = 0  # the term carries L^{-inv_l}
        mono = [0, 0, 0, 0]  # net monomial factor of the term

        def push_num(vec_a, vec_b):
            nonlocal sign, inv_l
            poly, s, common = split(vec_a, vec_b)
            if poly.LC < 0:
                poly, sign = -poly, -sign
            inv_l += s
            for k in range(4):
                mono[k] += common[k]
            num.append(poly)

        def push_den(vec_a, vec_b):
            nonlocal sign, inv_l
            poly, s, common = split(vec_a, vec_b)
            if poly.LC < 0:
                poly, sign = -poly, -sign
            inv_l -= s
            for k in range(4):
                mono[k] -= common[k]
            den[poly] += 1

        for i in range(n):
            for j in range(i + 1, n):
                a, b = sigma[i], sigma[j]
                if a < b:
                    continue
                sign = -sign
                for _ in range(g):
                    push_num(z_vec(b), z_vec(a, extra_u=1))
                    push_num(z_vec(b), z_vec(a, extra_v=1))
                    push_den(z_vec(a), z_vec(b, extra_u=1))
                    push_den(z_vec(a), z_vec(b, extra_v=1))
                push_num(z_vec(a), z_vec(b, 1, 1))
                push_den(z_vec(b), z_vec(a, 1, 1))
        for i in range(n - 1):
            a = sigma[i]
            # numerator monomial z_a -> L^{1-a} t^a z^{b(a)}
            inv_l += a - 1
            mono[2] += a
            mono[3] += block[a - 1]
            push_den(z_vec(a), z_vec(sigma[i + 1], 1, 1))
        push_den((0, 0, 0, 0), z_vec(sigma[0]))

        # fold the accumulated monomial and L-shift into the factor lists
        if inv_l > 0:
            den[RING_UVTZ.from_dict({(1, 1, 0, 0): 1})] += inv_l
        elif inv_l < 0:
            mono[0] += -inv_l
            mono[1] += -inv_l
        pos = tuple(max(0, e) for e in mono)
        neg = tuple(max(0, -e) for e in mono)
        if any(pos):
            num.append(RING_UVTZ.from_dict({pos: 1}))
        if any(neg):
            den[RING_UVTZ.from_dict({neg: 1})] += 1
        yield sign, num, den


def _res_lambda_deformed(g: int, parts: tuple[int, ...]) -> RationalZ:
    """Value of the cleared kernel at the block substitution, computed by
    folding the permutation terms along the deformation path t -> 1."""
    from ._poly import RING_UVTZ

    lam = Partition(parts)
    n = lam.length
    _, _, block = block_data(lam)
    pairs = _within_block_pairs(lam)
    num, den = _fold_terms(RING_UVTZ, list(_deformed_terms(g, n, block)))
    one_minus_t = RING_UVTZ.from_dict({(0, 0, 1, 0): -1, (0, 0, 0, 0): 1})
    key = -one_minus_t  # canonical orientation (t - 1)
    sign = 1
    for _ in pairs:
        if den.get(key, 0) > 0:
            den[key] -= 1
            sign = -sign
        elif den.get(one_minus_t, 0) > 0:
            den[one_minus_t] -= 1
        else:
            num = num * one_minus_t
    if den.get(key, 0) or den.get(one_minus_t, 0):
        raise NonInvertibleQError(
            f"deformation pole of order above {len(pairs)} for {lam}"
        )
    if sign < 0:
        num = -num

    def at_t_one(poly):
        return _poly.map_exponents(
            poly, RING_UVZ, lambda m: (m[0], m[1], m[3])
        )

    num_z = at_t_one(num)
    den_poly = RING_UVZ.one
    for f, k in den.items():
        if not k:
            continue
        fz = at_t_one(f)
        if not fz:
            raise NonInvertibleQError(
                f"denominator factor {f} vanishes on the path for {lam}"
            )
        den_poly *= fz**k
    out = RationalZ(num_z, den_poly)
    if not out.den_at_zero_invertible():
        raise NonInvertibleQError(f"denominator vanishes at z = 0 for {lam}")
    return out


@lru_cache(maxsize=None)
def _res_lambda_cached(g: int, parts: tuple[int, ...]) -> RationalZ:
    lam = Partition(parts)
    n = lam.length
    if n == 0:
        return RationalZ.one()
    if n >= 4:
        return _res_lambda_deformed(g, parts)
    ring_n, u, v, z = _gens(n)
    lpoly = u * v
    num, den = _l_mot_factored(g, n)
    den = +den
    _, _, block = block_data(lam)
    # clear the first-order pole factors along the within-block ratios
    for m in _within_block_pairs(lam):
        f = z[m] - lpoly * z[m + 1]
        if den[f] > 0:
            den[f] -= 1
        else:
            num = num * f
        den[z[m]] += 1
    num_z, m_num = _substitute_blocks(num, n, block)
    den_poly = None
    m_den = 0
    for f, k in den.items():
        if not k:
            continue
        fz, mf = _substitute_blocks(f, n, block)
        if not fz:
            raise NonInvertibleQError(
                f"pole factor {f} survives the block substitution for {lam}"
            )
        m_den += k * mf
        piece = fz**k
        den_poly = piece if den_poly is None else den_poly * piece
    if den_poly is None:
        den_poly = RING_UVZ.one
    out = RationalZ(num_z, den_poly).scale_monomial(m_den - m_num, 0)
    if not out.den_at_zero_invertible():
        raise NonInvertibleQError(f"denominator vanishes at z = 0 for {lam}")
    return out


def res_lambda(curve: CurveModel, lam: Partition) -> RationalZ:
    """Iterated residue of the symmetrized kernel along the blocks of lam.

    Computed by clearing the simple-pole factors (1 - L z_{m+1}/z_m) for the
    within-block consecutive pairs and substituting z_m -> L^{1-m} z^{b(m)}
    simultaneously.  The denominator of the result is invertible at z = 0,
    which is asserted.  For the empty partition the result is 1.
    """
    return _res_lambda_cached(curve.genus, tuple(lam.parts))


def res_lambda_sequential(curve: CurveModel, lam: Partition) -> RationalZ:
    """Cross-check path: take the within-block residues one ratio at a time.

    Processes z_{m+1}/z_m = L^{-1} from the innermost ratio outwards,
    multiplying by (1 - z_{m+1}/(L^{-1} z_m)) and substituting z_{m+1} ->
    L^{-1} z_m at each step, then sends the block leaders z_m -> L^{1-m}
    z^{b(m)}.  Must agree with :func:`res_lambda` exactly.
    """
    n = lam.length
    if n == 0:
        return RationalZ.one()
    ring_n, u, v, z = _gens(n)
    lpoly = u * v
    num, den = _l_mot_factored(curve.genus, n)
    den = +den
    _, _, block = block_data(lam)
    subst = {m: (m, 0) for m in range(1, n + 1)}  # z_m -> L^{-e} z_{target}
    for m in reversed(_within_block_pairs(lam)):
        # current image of z_{m+1} is L^{-e} z_t with t = m+1 still
        f = z[m] - lpoly * z[m + 1]
        if den[f] > 0:
            den[f] -= 1
        else:
            num = num * f
        den[z[m]] += 1
        # substitute z_{m+1} -> L^{-1} z_m in every factor
        num, extra_num = _subst_pair(num, m, n)
        new_den: Counter = Counter()
        extra_den = 0
        for fac, k in den.items():
            if not k:
                continue
            fz, mf = _subst_pair(fac, m, n)
            if not fz:
                raise NonInvertibleQError(
                    f"unexpected vanishing at step {m} for {lam}"
                )
            new_den[fz] += k
            extra_den += k * mf
        den = new_den
        num = num * lpoly ** max(0, extra_den - extra_num)
        if extra_num > extra_den:
            den[lpoly ** (extra_num - extra_den)] += 1
    # final leader substitution
    num_z, m_num = _substitute_blocks(num, n, block)
    den_poly = None
    m_den = 0
    for fac, k in den.items():
        if not k:
            continue
        fz, mf = _substitute_blocks(fac, n, block)
        m_den += k * mf
        piece = fz**k
        den_poly = piece if den_poly is None else den_poly * piece
    if den_poly is None:
        den_poly = RING_UVZ.one
    return RationalZ(num_z, den_poly).scale_monomial(m_den - m_num, 0)


def _subst_pair(poly, m: int, n: int):
    """z_{m+1} -> L^{-1} z_m inside ZZ[u,v,z_1..z_n]; returns (poly, shift)
    with true image L^{-shift} poly."""
    ring_n, _, _, _ = _gens(n)
    if not poly:
        return poly, 0
    shift = max(mono[1 + m + 1] for mono in poly)

    def mapper(mono):
        e = mono[1 + m + 1]
        extra = shift - e
        out = list(mono)
        out[1 + m + 1] = 0
        out[1 + m] += e
        out[0] += extra
        out[1] += extra
        return tuple(out)

    return _poly.map_exponents(poly, ring_n, mapper), shift


def h_mot(curve: CurveModel, lam: Partition, order: int) -> SeriesZ:
    """z-expansion of the iterated residue through z^order."""
    return res_lambda(curve, lam).series(order)


# ---------------------------------------------------------------------------
# box products of regularized zeta values
# ---------------------------------------------------------------------------


def _j_split(curve: CurveModel, lam: Partition):
    """(constant class, z-dependent rational part) of the box product."""
    const = ONE
    ratz = RationalZ.one()
    for box in lam.boxes():
        a, leg = arm_leg(lam, box)
        factor = zeta_star(curve, 1 + leg, a)
        if a == 0:
            const = const * factor
        else:
            ratz = ratz * factor
    return const, ratz


def j_mot(curve: CurveModel, lam: Partition, order: int) -> SeriesZ:
    """Product over the boxes of lam of regularized zeta values, expanded.

    Boxes with arm 0 contribute invertible constants, boxes with positive
    arm contribute genuine series in z.  The empty partition gives 1.
    """
    const, ratz = _j_split(curve, lam)
    return ratz.series(order) * const


# ---------------------------------------------------------------------------
# one-variable residues
# ---------------------------------------------------------------------------


def simple_pole_residue(f: RationalZ, x: MotClass) -> MotClass:
    """Residue at z = x with the convention ((x - z) f)|_{z=x}.

    Returns 0 at regular points; raises HigherOrderPoleError if (x - z)
    divides the reduced denominator more than once.
    """
    return f.residue_simple(x)


def stabilized_residue_limit(coeffs, x: MotClass, window: int = 3):
    """The residue of a series via the limit of A_d x^{d+1}.

    Returns the common value of the last ``window + 1`` products A_d x^{d+1}
    when they agree exactly, else None.  Exact stabilization happens for
    rational functions whose only pole is at x, once d passes the numerator
    degree; this is the series-side counterpart of the residue and is used
    as an independent oracle for :func:`simple_pole_residue`.
    """
    values = [c * x ** (d + 1) for d, c in enumerate(coeffs)]
    if len(values) < window + 1:
        return None
    tail = values[-(window + 1):]
    return tail[-1] if all(t == tail[-1] for t in tail) else None


# ---------------------------------------------------------------------------
# structural checks
# ---------------------------------------------------------------------------


def symmetrization_invariance_check(curve: CurveModel, n: int) -> bool:
    """The product (prod zt factors) * l_mot is a symmetric function.

    The symmetrization operator fixes the kernel, so the weighted kernel
    must be invariant under every transposition of the variables; this is a
    sanity check of the permutation bookkeeping.
    """
    g = curve.genus
    ring_n, u, v, z = _gens(n)
    lpoly = u * v
    num, den = _l_mot_factored(g, n)
    den = +den
    # multiply by the identity-orientation zeta product, cleared of Laurent
    # monomials: a symmetric z-monomial times prod NPP(i,j) over the
    # denominator prod (z_j - z_i)(z_j - L z_i)
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if g:
                num *= (z[j] - u * z[i]) ** g * (z[j] - v * z[i]) ** g
            den[z[j] - z[i]] += 1
            den[z[j] - lpoly * z[i]] += 1
    num, den = _cancel(num, den)
    w = MultiRational(*normalize_coprime(num, _expand(ring_n, den)), n, _canonical=True)
    for m in range(1, n):
        perm = {i: i for i in range(1, n + 1)}
        perm[m], perm[m + 1] = m + 1, m
        if w.permute_variables(perm) != w:
            return False
    return True
