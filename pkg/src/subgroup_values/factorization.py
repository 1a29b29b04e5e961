"""Factorization and irreducibility over finite fields.

Univariate factorization is squarefree decomposition + distinct-degree +
equal-degree splitting. Bivariate irreducibility finds one proper factor (or
proves there is none) by power-series lifting of a squarefree specialization
and subset recombination; when no usable specialization point exists in the
base field, the search ascends to an extension where one is guaranteed and
descends conjugate-orbit products. Outputs are deterministically ordered so
scans and reports reproduce byte for byte.
"""

import itertools
import math
import random
from dataclasses import dataclass

from .errors import (
    CharTooSmall,
    ConstantFunction,
    CtxMismatch,
    DegreeOutOfRange,
    DegreeTooLarge,
    ZeroPolynomial,
)
from .fields import MAX_EXT_DEGREE, FieldCtx, FieldElem, ext_field_build, prime_factors
from .polynomials import (
    BiPoly,
    RationalFunc,
    UniPoly,
    _uadd,
    _uderiv,
    _udivmod,
    _ueval,
    _uextgcd,
    _ugcd,
    _ukey,
    _umonic,
    _umul,
    _upowmod,
    _urem,
    _uscale,
    _ustrip,
    _usub,
    rational_normalize,
)

_DEFAULT_SEED = 0


def set_default_seed(seed: int) -> None:
    """Seed for the randomized splitting steps; fixed by default so runs repeat."""
    global _DEFAULT_SEED
    _DEFAULT_SEED = seed


# --- univariate factorization over any ctx (raw-list internals) -----------------


def _u_pth_root(ctx, f):
    """f with f' = 0 is g(X^p); return g, mapping coefficients through the
    inverse Frobenius c -> c^(p^(t-1))."""
    p = ctx.p
    e = ctx.p ** (ctx.t - 1)
    out = []
    for i in range(0, len(f), p):
        c = f[i]
        out.append(c if ctx.t == 1 else ctx.rpow(c, e))
    return _ustrip(ctx, out)


def _u_sqfree(ctx, f):
    """Squarefree decomposition of a monic f: list of (monic squarefree, exponent)."""
    out = []
    mult = 1
    one = [ctx.one_raw]
    while len(f) - 1 >= 1:
        fp = _uderiv(ctx, f)
        if not fp:
            f = _u_pth_root(ctx, f)
            mult *= ctx.p
            continue
        c = _ugcd(ctx, f, fp)
        w = _udivmod(ctx, f, c)[0]
        i = 1
        while len(w) - 1 >= 1:
            y = _ugcd(ctx, w, c)
            z = _udivmod(ctx, w, y)[0]
            if len(z) - 1 >= 1:
                out.append((z, i * mult))
            i += 1
            w = y
            c = _udivmod(ctx, c, y)[0]
        f = c
    return out


def _u_ddf(ctx, f):
    """Distinct-degree split of a monic squarefree f: list of (product, degree)."""
    out = []
    x = [ctx.zero_raw, ctx.one_raw]
    h = list(x)
    k = 0
    fstar = list(f)
    q = ctx.q
    while len(fstar) - 1 >= 2 * (k + 1):
        k += 1
        h = _upowmod(ctx, h, q, fstar)
        g = _ugcd(ctx, _usub(ctx, h, x), fstar)
        if len(g) - 1 >= 1:
            out.append((g, k))
            fstar = _udivmod(ctx, fstar, g)[0]
            h = _urem(ctx, h, fstar)
    if len(fstar) - 1 >= 1:
        out.append((fstar, len(fstar) - 1))
    return out


def _u_random_poly(ctx, rng, deg):
    if ctx.t == 1:
        return _ustrip(ctx, [rng.randrange(ctx.p) for _ in range(deg + 1)])
    return _ustrip(
        ctx,
        [tuple(rng.randrange(ctx.p) for _ in range(ctx.t)) for _ in range(deg + 1)],
    )


def _u_edf(ctx, f, d, rng):
    """Equal-degree split of monic squarefree f (all factors of degree d)."""
    n = len(f) - 1
    if n == d:
        return [f]
    q = ctx.q
    while True:
        a = _u_random_poly(ctx, rng, n - 1)
        if len(a) - 1 < 1:
            continue
        if ctx.p == 2:
            # trace map over F_{2^(t*d)}
            m = ctx.t * d
            tr = list(a)
            cur = list(a)
            for _ in range(m - 1):
                cur = _urem(ctx, _umul(ctx, cur, cur), f)
                tr = _uadd(ctx, tr, cur)
            g = _ugcd(ctx, tr, f)
        else:
            b = _upowmod(ctx, a, (q**d - 1) // 2, f)
            g = _ugcd(ctx, _usub(ctx, b, [ctx.one_raw]), f)
        if 0 < len(g) - 1 < n:
            rest = _udivmod(ctx, f, g)[0]
            return _u_edf(ctx, g, d, rng) + _u_edf(ctx, rest, d, rng)


def _u_factor_monic_squarefree(ctx, f, rng):
    out = []
    for g, d in _u_ddf(ctx, f):
        out.extend(_u_edf(ctx, g, d, rng))
    return out


def _u_factor(ctx, f):
    """(unit raw, sorted [(monic irreducible raw-list, multiplicity)])."""
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit = f[-1]
    fm = _umonic(ctx, f)
    if len(fm) - 1 == 0:
        return unit, []
    rng = random.Random(_DEFAULT_SEED)
    pairs = []
    for part, mult in _u_sqfree(ctx, fm):
        for irr in _u_factor_monic_squarefree(ctx, part, rng):
            pairs.append((irr, mult))
    pairs.sort(key=lambda pm: (len(pm[0]), _ukey(ctx, pm[0])))
    return unit, pairs


def _u_roots(ctx, f):
    """Roots in ctx of a nonzero f, in ascending raw_key order."""
    _, pairs = _u_factor(ctx, f)
    roots = [ctx.rneg(g[0]) for g, _ in pairs if len(g) - 1 == 1]
    roots.sort(key=ctx.raw_key)
    return roots


@dataclass(frozen=True)
class FactorMultiset:
    """unit * prod(factor^multiplicity) reproduces the input exactly."""

    unit: FieldElem
    factors: tuple

    def expand(self) -> UniPoly:
        ctx = self.unit.ctx
        acc = UniPoly(ctx, (self.unit.raw,), raw=True)
        for poly, mult in self.factors:
            acc = acc * poly**mult
        return acc

    def multiplicities(self) -> tuple:
        return tuple(m for _, m in self.factors)


def factor_univariate(f: UniPoly, ctx: FieldCtx | None = None) -> FactorMultiset:
    """Complete factorization into monic irreducibles, deterministically ordered."""
    if ctx is not None and ctx != f.ctx:
        raise CtxMismatch("explicit context disagrees with the polynomial")
    ctx = f.ctx
    if f.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    unit, pairs = _u_factor(ctx, list(f.coeffs))
    return FactorMultiset(
        unit=FieldElem(ctx, unit),
        factors=tuple((UniPoly(ctx, g, raw=True), m) for g, m in pairs),
    )


# --- embeddings between extensions of the same prime field ----------------------

_EMBED_CACHE: dict = {}


class Embedding:
    """F_{p^a} -> F_{p^b} with a | b, sending the source generator to the
    lexicographically smallest root of the source modulus."""

    __slots__ = ("src", "dst", "_powers", "_identity")

    def __init__(self, src: FieldCtx, dst: FieldCtx):
        if src.p != dst.p or dst.t % src.t != 0:
            raise CtxMismatch(f"no embedding {src!r} -> {dst!r}")
        self.src = src
        self.dst = dst
        self._identity = src == dst
        if self._identity or src.t == 1:
            self._powers = None
        else:
            mod = [dst.from_int(c) for c in src.modulus]
            roots = _u_roots(dst, mod)
            if not roots:
                raise AssertionError("source modulus has no root in the target field")
            root = roots[0]
            powers = [dst.one_raw]
            for _ in range(src.t - 1):
                powers.append(dst.rmul(powers[-1], root))
            self._powers = powers

    def map_raw(self, a):
        if self._identity:
            return a
        if self.src.t == 1:
            return self.dst.from_int(a)
        dst = self.dst
        acc = dst.zero_raw
        p = dst.p
        for c, pw in zip(a, self._powers):
            if c:
                acc = dst.radd(acc, tuple(x * c % p for x in pw))
        return acc

    def descend_raw(self, a):
        """Preimage in the source field, or None when a is outside the image."""
        src, dst = self.src, self.dst
        if self._identity:
            return a
        if src.t == 1:
            vec = (a,) if dst.t == 1 else a
            if any(vec[1:]):
                return None
            return vec[0]
        p = dst.p
        cols = [pw if dst.t > 1 else (pw,) for pw in self._powers]
        target = list(a if dst.t > 1 else (a,))
        # gaussian elimination on the (dst.t x src.t) system
        rows = dst.t
        ncols = len(cols)
        mat = [[cols[j][i] for j in range(ncols)] + [target[i]] for i in range(rows)]
        piv_cols = []
        r = 0
        for c in range(ncols):
            pr = next((i for i in range(r, rows) if mat[i][c] % p), None)
            if pr is None:
                continue
            mat[r], mat[pr] = mat[pr], mat[r]
            inv = pow(mat[r][c], -1, p)
            mat[r] = [v * inv % p for v in mat[r]]
            for i in range(rows):
                if i != r and mat[i][c] % p:
                    fac = mat[i][c]
                    mat[i] = [(v - fac * w) % p for v, w in zip(mat[i], mat[r])]
            piv_cols.append(c)
            r += 1
            if r == rows:
                break
        sol = [0] * ncols
        for i, c in enumerate(piv_cols):
            sol[c] = mat[i][-1]
        for i in range(r, rows):
            if mat[i][-1] % p:
                return None
        # verify (the pivoting above assumed full column rank)
        if self.map_raw(tuple(sol)) != (a if dst.t > 1 else dst.from_int(a)):
            return None
        return tuple(sol)


def get_embedding(src: FieldCtx, dst: FieldCtx) -> Embedding:
    key = (src.p, src.t, src.modulus, dst.t, dst.modulus)
    emb = _EMBED_CACHE.get(key)
    if emb is None:
        emb = Embedding(src, dst)
        _EMBED_CACHE[key] = emb
    return emb


def embed_unipoly(f: UniPoly, dst: FieldCtx) -> UniPoly:
    emb = get_embedding(f.ctx, dst)
    return UniPoly(dst, [emb.map_raw(c) for c in f.coeffs], raw=True)


def embed_bipoly(F: BiPoly, dst: FieldCtx) -> BiPoly:
    emb = get_embedding(F.ctx, dst)
    return BiPoly(dst, {k: emb.map_raw(c) for k, c in F.terms.items()}, raw=True)


# --- bivariate machinery ----------------------------------------------------------


def _content_y(F: BiPoly) -> UniPoly:
    """gcd over F_q[X] of the Y-view coefficients (monic; zero for F = 0)."""
    ctx = F.ctx
    acc = []
    for row in F.to_y_view():
        if not row.is_zero():
            acc = _ugcd(ctx, acc, list(row.coeffs))
            if len(acc) - 1 == 0:
                break
    return UniPoly(ctx, acc, raw=True)


def _primitive_y(ctx, rows):
    """Divide a Y-view (list of UniPoly) by its content; normalize the leading
    coefficient polynomial to be monic."""
    rows = [r for r in rows]
    while rows and rows[-1].is_zero():
        rows.pop()
    if not rows:
        return rows
    cont = []
    for r in rows:
        if not r.is_zero():
            cont = _ugcd(ctx, cont, list(r.coeffs))
            if len(cont) - 1 == 0:
                break
    if len(cont) - 1 >= 1:
        contp = UniPoly(ctx, cont, raw=True)
        rows = [r // contp if not r.is_zero() else r for r in rows]
    lc = rows[-1].lc
    if lc != ctx.one_raw:
        inv = FieldElem(ctx, ctx.rinv(lc))
        rows = [r * inv for r in rows]
    return rows


def _pseudo_rem_y(ctx, A, B):
    """Pseudo-remainder of Y-views A by B (deg_y A >= deg_y B >= 0)."""
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    while R and len(R) - 1 >= dB:
        lcR = R[-1]
        shift = len(R) - 1 - dB
        R = [c * lcB for c in R]
        for i in range(dB + 1):
            R[shift + i] = R[shift + i] - lcR * B[i]
        while R and R[-1].is_zero():
            R.pop()
    return R


def _gcd_y(F: BiPoly, G: BiPoly) -> BiPoly:
    """Primitive gcd of F and G viewed in (F_q[X])[Y] (content ignored)."""
    ctx = F.ctx
    A = [r for r in F.to_y_view()]
    B = [r for r in G.to_y_view()]
    while A and A[-1].is_zero():
        A.pop()
    while B and B[-1].is_zero():
        B.pop()
    if len(A) < len(B):
        A, B = B, A
    while B:
        R = _pseudo_rem_y(ctx, A, B)
        A, B = B, _primitive_y(ctx, R)
    A = _primitive_y(ctx, A)
    return BiPoly.from_y_view(ctx, A)


def _pad(ctx, lst, prec):
    z = ctx.zero_raw
    out = list(lst[:prec])
    out.extend([z] * (prec - len(out)))
    return out


def _series_mul(ctx, a, b, prec):
    z = ctx.zero_raw
    out = [z] * prec
    for i, x in enumerate(a):
        if i >= prec:
            break
        if not ctx.is_zero_raw(x):
            top = min(prec - i, len(b))
            for j in range(top):
                y = b[j]
                if not ctx.is_zero_raw(y):
                    out[i + j] = ctx.radd(out[i + j], ctx.rmul(x, y))
    return out


def _series_inv(ctx, f, prec):
    inv0 = ctx.rinv(f[0])
    z = ctx.zero_raw
    out = [inv0] + [z] * (prec - 1)
    for i in range(1, prec):
        acc = z
        top = min(i, len(f) - 1)
        for k in range(1, top + 1):
            if not ctx.is_zero_raw(f[k]):
                acc = ctx.radd(acc, ctx.rmul(f[k], out[i - k]))
        out[i] = ctx.rneg(ctx.rmul(acc, inv0))
    return out


def _spoly_mul(ctx, A, B, prec):
    """Product of polynomials in Y whose coefficients are X-series mod X^prec."""
    z = ctx.zero_raw
    out = [[z] * prec for _ in range(len(A) + len(B) - 1)]
    for i, sa in enumerate(A):
        for j, sb in enumerate(B):
            row = out[i + j]
            for k, x in enumerate(sa):
                if not ctx.is_zero_raw(x):
                    top = min(prec - k, len(sb))
                    for l in range(top):
                        y = sb[l]
                        if not ctx.is_zero_raw(y):
                            row[k + l] = ctx.radd(row[k + l], ctx.rmul(x, y))
    return out


def _spoly_prod_many(ctx, polys, prec):
    acc = polys[0]
    for q in polys[1:]:
        acc = _spoly_mul(ctx, acc, q, prec)
    return acc


def _hensel_find_factor(F: BiPoly, x0):
    """One proper factor of a Y-primitive squarefree F using the specialization
    at x0 (lc_Y(x0) != 0, F(x0, Y) squarefree), or None when F is irreducible."""
    ctx = F.ctx
    G = F.shift_x(x0)
    rows = [list(r.coeffs) for r in G.to_y_view()]
    n = len(rows) - 1
    m = G.deg_x
    prec = 2 * m + 1
    z = ctx.zero_raw

    u0 = _ustrip(ctx, [(row[0] if row else z) for row in rows])
    assert len(u0) - 1 == n, "leading coefficient vanished at the chosen point"
    rng = random.Random(_DEFAULT_SEED)
    base_factors = _u_factor_monic_squarefree(ctx, _umonic(ctx, u0), rng)
    base_factors.sort(key=lambda g: (len(g), _ukey(ctx, g)))
    r = len(base_factors)
    if r == 1:
        return None

    lc_series = _pad(ctx, rows[n], prec)
    linv = _series_inv(ctx, lc_series, prec)
    gstar = [_series_mul(ctx, _pad(ctx, row, prec), linv, prec) for row in rows]
    one_series = [ctx.one_raw] + [z] * (prec - 1)
    gstar[n] = one_series

    # lifted factors: monic in Y, coefficients are X-series
    lifted = []
    for g in base_factors:
        lifted.append([_pad(ctx, [c], prec) for c in g])

    # partial-fraction solvers for the correction step
    w = []
    for i, g in enumerate(base_factors):
        qi = [ctx.one_raw]
        for j, h in enumerate(base_factors):
            if j != i:
                qi = _urem(ctx, _umul(ctx, qi, h), g)
        _, u, _ = _uextgcd(ctx, qi, g)
        w.append(_urem(ctx, u, g))

    for c in range(1, prec):
        P = _spoly_prod_many(ctx, lifted, c + 1)
        err = _ustrip(ctx, [ctx.rsub(gstar[j][c], P[j][c]) for j in range(n + 1)])
        if not err:
            continue
        for i, g in enumerate(base_factors):
            delta = _urem(ctx, _umul(ctx, err, w[i]), g)
            fi = lifted[i]
            for jj, dc in enumerate(delta):
                fi[jj][c] = ctx.radd(fi[jj][c], dc)

    # subset recombination; a true factor corresponds to a sub-product
    for size in range(1, r // 2 + 1):
        for S in itertools.combinations(range(r), size):
            prod = _spoly_prod_many(ctx, [lifted[i] for i in S], prec)
            cand_rows = [
                UniPoly(ctx, _ustrip(ctx, _series_mul(ctx, lc_series, s, prec)), raw=True)
                for s in prod
            ]
            cand_rows = _primitive_y(ctx, cand_rows)
            C = BiPoly.from_y_view(ctx, cand_rows)
            if C.is_constant():
                continue
            if G.try_divide(C) is not None:
                return C.shift_x(ctx.rneg(x0))
    return None


def _good_point(F: BiPoly):
    """First x0 with nonvanishing Y-leading coefficient and squarefree
    specialization, or None."""
    ctx = F.ctx
    rows = [list(r.coeffs) for r in F.to_y_view()]
    n = len(rows) - 1
    lc = rows[n]
    z = ctx.zero_raw
    for x0 in ctx.elements():
        if ctx.is_zero_raw(_ueval(ctx, lc, x0)):
            continue
        fiber = _ustrip(ctx, [_ueval(ctx, row, x0) for row in rows])
        d = _uderiv(ctx, fiber)
        if not d:
            continue
        if len(_ugcd(ctx, fiber, d)) - 1 == 0:
            return x0
    return None


def _complete_squarefree_factorization(F: BiPoly):
    """All irreducible factors (grlex-monic) of a squarefree primitive F."""
    w = find_proper_factor(F)
    if w is None:
        return [F.grlex_monic()]
    q = F.try_divide(w)
    assert q is not None, "reported factor does not divide"
    return _complete_squarefree_factorization(w) + _complete_squarefree_factorization(q)


def _factor_via_extension(F: BiPoly):
    """Fallback when no base-field specialization point is usable: factor over
    an extension where one is guaranteed, then return a conjugate-orbit product
    (a base-field factor), or None when the orbit covers everything."""
    ctx = F.ctx
    n, m = F.deg_y, F.deg_x
    bad_bound = m + m * (2 * n - 1)
    u = 2
    while ctx.q**u <= bad_bound:
        u += 1
    big_t = ctx.t * u
    if big_t > MAX_EXT_DEGREE:
        raise DegreeTooLarge(
            f"irreducibility test needs F_{{p^{big_t}}}, beyond the degree cap"
        )
    big = ext_field_build(ctx.p, big_t)
    emb = get_embedding(ctx, big)
    F_up = embed_bipoly(F, big)
    factors = _complete_squarefree_factorization(F_up)
    if len(factors) == 1:
        return None
    factors.sort(key=lambda h: h.key())
    index = {h.key(): h for h in factors}
    q0 = ctx.q
    start = factors[0]
    orbit = [start]
    seen = {start.key()}
    cur = start
    while True:
        cur = BiPoly(big, {k: big.rpow(c, q0) for k, c in cur.terms.items()}, raw=True)
        cur = cur.grlex_monic()
        if cur.key() in seen:
            break
        assert cur.key() in index, "conjugate escaped the factor list"
        orbit.append(cur)
        seen.add(cur.key())
    if len(orbit) == len(factors):
        return None
    prod = orbit[0]
    for h in orbit[1:]:
        prod = prod * h
    prod = prod.grlex_monic()
    down = {}
    for k, c in prod.terms.items():
        dc = emb.descend_raw(c)
        assert dc is not None, "orbit product not defined over the base field"
        down[k] = dc
    return BiPoly(ctx, down, raw=True)


def _bipoly_pth_root(F: BiPoly) -> BiPoly:
    ctx = F.ctx
    p = ctx.p
    e = ctx.p ** (ctx.t - 1)
    out = {}
    for (i, j), c in F.terms.items():
        assert i % p == 0 and j % p == 0
        out[(i // p, j // p)] = c if ctx.t == 1 else ctx.rpow(c, e)
    return BiPoly(ctx, out, raw=True)


def find_proper_factor(F: BiPoly):
    """A nontrivial factor of F over its own field, or None when irreducible.

    Constants have no factorization; callers enforce degree bounds.
    """
    ctx = F.ctx
    if F.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if F.is_constant():
        return None

    if F.deg_y <= 0:
        f = UniPoly(ctx, [F.terms.get((i, 0), ctx.zero_raw) for i in range(F.deg_x + 1)], raw=True)
        fm = factor_univariate(f)
        if len(fm.factors) == 1 and fm.factors[0][1] == 1:
            return None
        return BiPoly.from_unipoly_x(fm.factors[0][0])
    if F.deg_x <= 0:
        f = UniPoly(ctx, [F.terms.get((0, j), ctx.zero_raw) for j in range(F.deg_y + 1)], raw=True)
        fm = factor_univariate(f)
        if len(fm.factors) == 1 and fm.factors[0][1] == 1:
            return None
        return BiPoly.from_unipoly_y(fm.factors[0][0])

    cy = _content_y(F)
    if cy.degree >= 1:
        return BiPoly.from_unipoly_x(cy)
    cx = _content_y(F.swap_vars())
    if cx.degree >= 1:
        return BiPoly.from_unipoly_y(cx)

    FY = F.derivative_y()
    if FY.is_zero():
        FX = F.swap_vars().derivative_y()
        if FX.is_zero():
            return _bipoly_pth_root(F)
        w = find_proper_factor(F.swap_vars())
        return w.swap_vars() if w is not None else None
    g = _gcd_y(F, FY)
    if g.deg_y >= 1:
        return g

    x0 = _good_point(F)
    if x0 is not None:
        return _hensel_find_factor(F, x0)
    return _factor_via_extension(F)


def _validate_bivariate_input(F: BiPoly):
    if F.is_zero():
        raise ZeroPolynomial("zero polynomial")
    td = F.total_degree
    if not isinstance(td, int) or not 1 <= td <= 8:
        raise DegreeOutOfRange(f"total degree must be in 1..8, got {td}")
    if F.ctx.p <= td:
        raise CharTooSmall(f"need p > total degree, got p = {F.ctx.p}, degree {td}")


def is_irreducible_bivariate(F: BiPoly, ctx: FieldCtx | None = None) -> bool:
    """True iff F has no nontrivial factorization over its own field."""
    if ctx is not None and ctx != F.ctx:
        raise CtxMismatch("explicit context disagrees with the polynomial")
    _validate_bivariate_input(F)
    return find_proper_factor(F) is None


@dataclass(frozen=True)
class IrreducibilityVerdict:
    over_base: bool
    absolutely: bool
    witness: BiPoly | None
    witness_ext: int | None  # extension degree over F_p of the witness's field

    def __post_init__(self):
        assert self.over_base or not self.absolutely
        assert (self.witness is not None) == (not self.absolutely)


def is_absolutely_irreducible(F: BiPoly, p: int | None = None) -> IrreducibilityVerdict:
    """Absolute-irreducibility verdict with a verified witness factor.

    When F is irreducible over its base field F_q, any factorization over the
    closure splits F into conjugate factors of equal bidegree, all defined over
    F_{q^r} with r dividing gcd(deg_x, deg_y, total degree); it therefore
    suffices to retest over F_{q^ell} for the primes ell of that gcd.
    """
    ctx = F.ctx
    if p is not None and p != ctx.p:
        raise CtxMismatch("explicit p disagrees with the polynomial's field")
    _validate_bivariate_input(F)
    w = find_proper_factor(F)
    if w is not None:
        return IrreducibilityVerdict(False, False, w, ctx.t)
    g = math.gcd(F.deg_x, F.deg_y, F.total_degree)
    for ell in prime_factors(g) if g > 1 else []:
        big_t = ctx.t * ell
        if big_t > MAX_EXT_DEGREE:
            raise DegreeTooLarge(
                f"absolute test needs F_{{p^{big_t}}}, beyond the degree cap"
            )
        big = ext_field_build(ctx.p, big_t)
        F_up = embed_bipoly(F, big)
        w = find_proper_factor(F_up)
        if w is not None:
            return IrreducibilityVerdict(True, False, w, big.t)
    return IrreducibilityVerdict(True, True, None, None)


def univariate_factor_of(F: BiPoly) -> UniPoly | None:
    """A nonconstant univariate divisor (in X, else in Y), or None.

    A divisor depending on X alone must divide every Y-view coefficient, so it
    exists iff one of the two contents is nonconstant; the content itself is
    returned.
    """
    if F.is_zero():
        raise ZeroPolynomial("zero polynomial")
    if F.is_constant():
        return None
    if F.deg_y <= 0:
        ctx = F.ctx
        return UniPoly(ctx, [F.terms.get((i, 0), ctx.zero_raw) for i in range(F.deg_x + 1)], raw=True)
    if F.deg_x <= 0:
        ctx = F.ctx
        return UniPoly(ctx, [F.terms.get((0, j), ctx.zero_raw) for j in range(F.deg_y + 1)], raw=True)
    cy = _content_y(F)
    if cy.degree >= 1:
        return cy
    cx = _content_y(F.swap_vars())
    if cx.degree >= 1:
        return cx
    return None


# --- perfect powers -----------------------------------------------------------------


def perfect_power_exponent(psi: RationalFunc) -> int:
    """Largest n with psi = phi^n for some rational phi over the closure.

    Over the closure the multiplicity profile of psi is exactly the multiset of
    squarefree-decomposition exponents of numerator and denominator (scalars
    are always n-th powers there), so n is their gcd; n = 1 means psi is not a
    perfect power.
    """
    if psi.is_constant():
        raise ConstantFunction("constant functions have no power exponent")
    ctx = psi.ctx
    exps = []
    for poly in (psi.num, psi.den):
        if isinstance(poly.degree, int) and poly.degree >= 1:
            for _, mult in _u_sqfree(ctx, _umonic(ctx, list(poly.coeffs))):
                exps.append(mult)
    n = math.gcd(*exps) if exps else 1
    return max(n, 1)


def extract_power_root(psi: RationalFunc, n: int) -> RationalFunc:
    """A rational phi with phi^n = psi; coefficients may need a field extension
    when the leading coefficient is not an n-th power in the base field."""
    if n == 1:
        return psi
    ctx = psi.ctx
    num_root = [ctx.one_raw]
    for g, mult in _u_sqfree(ctx, _umonic(ctx, list(psi.num.coeffs))):
        assert mult % n == 0
        for _ in range(mult // n):
            num_root = _umul(ctx, num_root, g)
    den_root = [ctx.one_raw]
    for g, mult in _u_sqfree(ctx, _umonic(ctx, list(psi.den.coeffs))):
        assert mult % n == 0
        for _ in range(mult // n):
            den_root = _umul(ctx, den_root, g)
    a = psi.num.lc
    for u in range(1, MAX_EXT_DEGREE + 1):
        target = ext_field_build(ctx.p, ctx.t * u) if u > 1 else ctx
        if target.t > MAX_EXT_DEGREE:
            break
        emb = get_embedding(ctx, target)
        a_up = emb.map_raw(a)
        # roots of Z^n - a in the target field
        zpoly = [target.rneg(a_up)] + [target.zero_raw] * (n - 1) + [target.one_raw]
        roots = _u_roots(target, zpoly)
        if roots:
            b = roots[0]
            numl = [emb.map_raw(c) for c in num_root]
            denl = [emb.map_raw(c) for c in den_root]
            num = UniPoly(target, _uscale(target, numl, b), raw=True)
            den = UniPoly(target, denl, raw=True)
            return rational_normalize(num, den)
    raise DegreeTooLarge(
        f"no degree-{n} root of the leading coefficient within the extension cap"
    )
