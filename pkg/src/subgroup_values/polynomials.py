"""Univariate and bivariate polynomials over a FieldCtx, and rational functions.

Coefficients are stored in raw form (see fields); the module-private _u*
helpers work on plain lists of raws so factorization and lifting loops avoid
object overhead. Degree of the zero polynomial is the NEG_INF sentinel, which
keeps max/min degree formulas total.
"""

from .errors import (
    BothZero,
    CtxMismatch,
    DegreeLawViolation,
    PoleAt,
    ZeroDenominator,
    ZeroPolynomial,
)
from .fields import NEG_INF, FieldCtx, FieldElem

# --- raw-list univariate helpers ----------------------------------------------


def _ustrip(ctx, f):
    while f and ctx.is_zero_raw(f[-1]):
        f.pop()
    return f


def _uadd(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_raw
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(ctx.radd(x, y))
    return _ustrip(ctx, out)


def _usub(ctx, a, b):
    n = max(len(a), len(b))
    z = ctx.zero_raw
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else z
        y = b[i] if i < len(b) else z
        out.append(ctx.rsub(x, y))
    return _ustrip(ctx, out)


def _uneg(ctx, a):
    return [ctx.rneg(x) for x in a]


def _uscale(ctx, a, c):
    if ctx.is_zero_raw(c):
        return []
    return [ctx.rmul(x, c) for x in a]


def _umul(ctx, a, b):
    if not a or not b:
        return []
    z = ctx.zero_raw
    out = [z] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not ctx.is_zero_raw(x):
            for j, y in enumerate(b):
                out[i + j] = ctx.radd(out[i + j], ctx.rmul(x, y))
    return _ustrip(ctx, out)


def _udivmod(ctx, a, b):
    if not b:
        raise ZeroPolynomial("division by the zero polynomial")
    rem = list(a)
    db = len(b) - 1
    inv = ctx.rinv(b[-1])
    z = ctx.zero_raw
    q = [z] * max(len(rem) - db, 0)
    while rem and len(rem) - 1 >= db:
        c = ctx.rmul(rem[-1], inv)
        shift = len(rem) - 1 - db
        q[shift] = c
        for i in range(db + 1):
            rem[shift + i] = ctx.rsub(rem[shift + i], ctx.rmul(c, b[i]))
        _ustrip(ctx, rem)
    return q, rem


def _urem(ctx, a, b):
    return _udivmod(ctx, a, b)[1]


def _umonic(ctx, a):
    if not a:
        return a
    lc = a[-1]
    if lc == ctx.one_raw:
        return list(a)
    return _uscale(ctx, a, ctx.rinv(lc))


def _ugcd(ctx, a, b):
    a, b = list(a), list(b)
    while b:
        a, b = b, _urem(ctx, a, b)
    return _umonic(ctx, a)


def _uextgcd(ctx, a, b):
    """(g, u, v) with u*a + v*b = g and g monic."""
    r0, r1 = list(a), list(b)
    s0, s1 = [ctx.one_raw], []
    t0, t1 = [], [ctx.one_raw]
    while r1:
        q, r = _udivmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _usub(ctx, s0, _umul(ctx, q, s1))
        t0, t1 = t1, _usub(ctx, t0, _umul(ctx, q, t1))
    if r0:
        inv = ctx.rinv(r0[-1])
        r0 = _uscale(ctx, r0, inv)
        s0 = _uscale(ctx, s0, inv)
        t0 = _uscale(ctx, t0, inv)
    return r0, s0, t0


def _ueval(ctx, f, x):
    acc = ctx.zero_raw
    for c in reversed(f):
        acc = ctx.radd(ctx.rmul(acc, x), c)
    return acc


def _uderiv(ctx, f):
    out = []
    for i in range(1, len(f)):
        out.append(ctx.rmul(f[i], ctx.from_int(i)))
    return _ustrip(ctx, out)


def _upowmod(ctx, base, e, m):
    result = [ctx.one_raw]
    b = _urem(ctx, base, m)
    while e:
        if e & 1:
            result = _urem(ctx, _umul(ctx, result, b), m)
        b = _urem(ctx, _umul(ctx, b, b), m)
        e >>= 1
    return result


def _ushift(ctx, f, a):
    """f(X + a) by Horner: ((c_n (X+a) + c_{n-1})(X+a) + ...)."""
    if ctx.is_zero_raw(a):
        return list(f)
    out = []
    for c in reversed(f):
        # out = out * (X + a) + c
        z = ctx.zero_raw
        nxt = [z] * (len(out) + 1)
        for i, v in enumerate(out):
            nxt[i + 1] = ctx.radd(nxt[i + 1], v)
            nxt[i] = ctx.radd(nxt[i], ctx.rmul(v, a))
        nxt[0] = ctx.radd(nxt[0], c)
        out = _ustrip(ctx, nxt)
    return out


def _ukey(ctx, f):
    return tuple(ctx.raw_key(c) for c in f)


# --- UniPoly --------------------------------------------------------------------


class UniPoly:
    """Dense univariate polynomial; trailing zeros stripped, immutable by use."""

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs=(), raw: bool = False):
        self.ctx = ctx
        if raw:
            cs = list(coeffs)
        else:
            cs = []
            for c in coeffs:
                if isinstance(c, FieldElem):
                    if c.ctx != ctx:
                        raise CtxMismatch("coefficient from another field")
                    cs.append(c.raw)
                elif isinstance(c, int):
                    cs.append(ctx.from_int(c))
                else:
                    cs.append(c)
        self.coeffs = tuple(_ustrip(ctx, cs))

    @classmethod
    def from_ints(cls, ctx, ints):
        return cls(ctx, [ctx.from_int(i) for i in ints], raw=True)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, (), raw=True)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (ctx.one_raw,), raw=True)

    @classmethod
    def constant(cls, ctx, c):
        return cls(ctx, (c,))

    @classmethod
    def x(cls, ctx):
        return cls(ctx, (ctx.zero_raw, ctx.one_raw), raw=True)

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def is_constant(self):
        return len(self.coeffs) <= 1

    @property
    def lc(self):
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.ctx.one_raw

    def _check(self, other):
        if self.ctx != other.ctx:
            raise CtxMismatch("polynomials over different fields")

    def __add__(self, other):
        self._check(other)
        return UniPoly(self.ctx, _uadd(self.ctx, list(self.coeffs), list(other.coeffs)), raw=True)

    def __sub__(self, other):
        self._check(other)
        return UniPoly(self.ctx, _usub(self.ctx, list(self.coeffs), list(other.coeffs)), raw=True)

    def __neg__(self):
        return UniPoly(self.ctx, _uneg(self.ctx, list(self.coeffs)), raw=True)

    def __mul__(self, other):
        if isinstance(other, UniPoly):
            self._check(other)
            return UniPoly(self.ctx, _umul(self.ctx, list(self.coeffs), list(other.coeffs)), raw=True)
        raw = other.raw if isinstance(other, FieldElem) else self.ctx.from_int(other)
        return UniPoly(self.ctx, _uscale(self.ctx, list(self.coeffs), raw), raw=True)

    __rmul__ = __mul__

    def __divmod__(self, other):
        self._check(other)
        q, r = _udivmod(self.ctx, list(self.coeffs), list(other.coeffs))
        return UniPoly(self.ctx, q, raw=True), UniPoly(self.ctx, r, raw=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        result = UniPoly.one(self.ctx)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def monic(self):
        return UniPoly(self.ctx, _umonic(self.ctx, list(self.coeffs)), raw=True)

    def derivative(self):
        return UniPoly(self.ctx, _uderiv(self.ctx, list(self.coeffs)), raw=True)

    def eval_raw(self, x_raw):
        return _ueval(self.ctx, self.coeffs, x_raw)

    def eval(self, x) -> FieldElem:
        x = self.ctx.el(x)
        return FieldElem(self.ctx, _ueval(self.ctx, self.coeffs, x.raw))

    def compose(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        acc = UniPoly.zero(self.ctx)
        for c in reversed(self.coeffs):
            acc = acc * other + UniPoly(self.ctx, (c,), raw=True)
        return acc

    def shift(self, a) -> "UniPoly":
        a = self.ctx.el(a).raw
        return UniPoly(self.ctx, _ushift(self.ctx, list(self.coeffs), a), raw=True)

    def key(self):
        return (len(self.coeffs), _ukey(self.ctx, self.coeffs))

    def text(self) -> str:
        """Canonical expression like "x^2+3*x+1"; parseable by the CLI grammar."""
        if not self.coeffs:
            return "0"
        if self.ctx.t != 1:
            raise ValueError("text form exists only over prime fields")
        parts = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("x" if c == 1 else f"{c}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{c}*x^{i}")
        return "+".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, UniPoly)
            and self.ctx == other.ctx
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.t, self.coeffs))

    def __repr__(self):
        if self.ctx.t == 1:
            return f"UniPoly({self.text()!r}, p={self.ctx.p})"
        return f"UniPoly({list(self.coeffs)!r} over {self.ctx!r})"


def poly_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor."""
    if a.ctx != b.ctx:
        raise CtxMismatch("polynomials over different fields")
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    return UniPoly(a.ctx, _ugcd(a.ctx, list(a.coeffs), list(b.coeffs)), raw=True)


# --- BiPoly ---------------------------------------------------------------------


class BiPoly:
    """Sparse bivariate polynomial as a map (i, j) -> nonzero raw coefficient."""

    __slots__ = ("ctx", "terms", "deg_x", "deg_y", "total_degree")

    def __init__(self, ctx: FieldCtx, terms=None, raw: bool = False):
        self.ctx = ctx
        tm = {}
        if terms:
            for (i, j), c in terms.items():
                if not raw:
                    if isinstance(c, FieldElem):
                        if c.ctx != ctx:
                            raise CtxMismatch("coefficient from another field")
                        c = c.raw
                    elif isinstance(c, int):
                        c = ctx.from_int(c)
                if not ctx.is_zero_raw(c):
                    tm[(i, j)] = c
        self.terms = tm
        if tm:
            self.deg_x = max(i for i, _ in tm)
            self.deg_y = max(j for _, j in tm)
            self.total_degree = max(i + j for i, j in tm)
        else:
            self.deg_x = NEG_INF
            self.deg_y = NEG_INF
            self.total_degree = NEG_INF

    def is_zero(self):
        return not self.terms

    def is_constant(self):
        return all(i == 0 and j == 0 for i, j in self.terms)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        ctx = self.ctx
        for k, c in other.terms.items():
            out[k] = ctx.radd(out.get(k, ctx.zero_raw), c)
        return BiPoly(ctx, out, raw=True)

    def __sub__(self, other):
        self._check(other)
        out = dict(self.terms)
        ctx = self.ctx
        for k, c in other.terms.items():
            out[k] = ctx.rsub(out.get(k, ctx.zero_raw), c)
        return BiPoly(ctx, out, raw=True)

    def __neg__(self):
        ctx = self.ctx
        return BiPoly(ctx, {k: ctx.rneg(c) for k, c in self.terms.items()}, raw=True)

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            return self.scale(other)
        self._check(other)
        ctx = self.ctx
        out = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                k = (i1 + i2, j1 + j2)
                v = ctx.rmul(c1, c2)
                if k in out:
                    out[k] = ctx.radd(out[k], v)
                else:
                    out[k] = v
        return BiPoly(ctx, out, raw=True)

    def scale(self, c):
        ctx = self.ctx
        if isinstance(c, FieldElem):
            c = c.raw
        elif isinstance(c, int):
            c = ctx.from_int(c)
        return BiPoly(ctx, {k: ctx.rmul(v, c) for k, v in self.terms.items()}, raw=True)

    def _check(self, other):
        if self.ctx != other.ctx:
            raise CtxMismatch("polynomials over different fields")

    def eval_raw(self, x_raw, y_raw):
        """Exact evaluation, Horner in Y inside and X outside."""
        ctx = self.ctx
        if not self.terms:
            return ctx.zero_raw
        nx = self.deg_x
        rows = [{} for _ in range(nx + 1)]
        for (i, j), c in self.terms.items():
            rows[i][j] = c
        acc = ctx.zero_raw
        for i in range(nx, -1, -1):
            row = rows[i]
            inner = ctx.zero_raw
            if row:
                ny = max(row)
                for j in range(ny, -1, -1):
                    inner = ctx.rmul(inner, y_raw)
                    if j in row:
                        inner = ctx.radd(inner, row[j])
            acc = ctx.radd(ctx.rmul(acc, x_raw), inner)
        return acc

    def eval(self, x, y) -> FieldElem:
        x = self.ctx.el(x)
        y = self.ctx.el(y)
        return FieldElem(self.ctx, self.eval_raw(x.raw, y.raw))

    def to_y_view(self) -> list:
        """Coefficients as polynomials in X, indexed by the power of Y."""
        ny = 0 if self.is_zero() else self.deg_y
        rows = [[] for _ in range(ny + 1)]
        z = self.ctx.zero_raw
        for (i, j), c in self.terms.items():
            row = rows[j]
            while len(row) <= i:
                row.append(z)
            row[i] = c
        return [UniPoly(self.ctx, r, raw=True) for r in rows]

    @classmethod
    def from_y_view(cls, ctx, rows) -> "BiPoly":
        terms = {}
        for j, poly in enumerate(rows):
            cs = poly.coeffs if isinstance(poly, UniPoly) else poly
            for i, c in enumerate(cs):
                if not ctx.is_zero_raw(c):
                    terms[(i, j)] = c
        return cls(ctx, terms, raw=True)

    @classmethod
    def from_unipoly_x(cls, f: UniPoly) -> "BiPoly":
        return cls(f.ctx, {(i, 0): c for i, c in enumerate(f.coeffs)}, raw=True)

    @classmethod
    def from_unipoly_y(cls, f: UniPoly) -> "BiPoly":
        return cls(f.ctx, {(0, j): c for j, c in enumerate(f.coeffs)}, raw=True)

    def swap_vars(self) -> "BiPoly":
        return BiPoly(self.ctx, {(j, i): c for (i, j), c in self.terms.items()}, raw=True)

    def shift_x(self, a) -> "BiPoly":
        """Substitute X -> X + a."""
        rows = self.to_y_view()
        return BiPoly.from_y_view(self.ctx, [r.shift(a) for r in rows])

    def derivative_y(self) -> "BiPoly":
        ctx = self.ctx
        out = {}
        for (i, j), c in self.terms.items():
            if j >= 1:
                v = ctx.rmul(c, ctx.from_int(j))
                if not ctx.is_zero_raw(v):
                    out[(i, j - 1)] = v
        return BiPoly(ctx, out, raw=True)

    def grlex_lead(self):
        """Leading (monomial, coeff) under graded lex with X > Y."""
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        k = max(self.terms, key=lambda ij: (ij[0] + ij[1], ij[0]))
        return k, self.terms[k]

    def grlex_monic(self) -> "BiPoly":
        _, c = self.grlex_lead()
        if c == self.ctx.one_raw:
            return self
        return self.scale(self.ctx.rinv(c))

    def try_divide(self, divisor: "BiPoly"):
        """Exact quotient self / divisor, or None when it does not divide."""
        self._check(divisor)
        if divisor.is_zero():
            raise ZeroPolynomial("division by zero polynomial")
        ctx = self.ctx
        (di, dj), dc = divisor.grlex_lead()
        dc_inv = ctx.rinv(dc)
        rem = dict(self.terms)
        quo = {}
        while rem:
            k = max(rem, key=lambda ij: (ij[0] + ij[1], ij[0]))
            i, j = k
            if i < di or j < dj:
                return None
            qk = (i - di, j - dj)
            qc = ctx.rmul(rem[k], dc_inv)
            quo[qk] = qc
            for (ti, tj), tc in divisor.terms.items():
                kk = (ti + qk[0], tj + qk[1])
                v = ctx.rsub(rem.get(kk, ctx.zero_raw), ctx.rmul(qc, tc))
                if ctx.is_zero_raw(v):
                    rem.pop(kk, None)
                else:
                    rem[kk] = v
        return BiPoly(ctx, quo, raw=True)

    def key(self):
        return tuple(sorted((i, j, self.ctx.raw_key(c)) for (i, j), c in self.terms.items()))

    def text(self) -> str:
        if not self.terms:
            return "0"
        if self.ctx.t != 1:
            return repr(self)
        parts = []
        for (i, j) in sorted(self.terms, key=lambda ij: (-(ij[0] + ij[1]), -ij[0])):
            c = self.terms[(i, j)]
            mono = []
            if i == 1:
                mono.append("x")
            elif i > 1:
                mono.append(f"x^{i}")
            if j == 1:
                mono.append("y")
            elif j > 1:
                mono.append(f"y^{j}")
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(mono))
            else:
                parts.append("*".join([str(c)] + mono))
        return "+".join(parts)

    def __eq__(self, other):
        return (
            isinstance(other, BiPoly)
            and self.ctx == other.ctx
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.t, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if self.ctx.t == 1:
            return f"BiPoly({self.text()!r}, p={self.ctx.p})"
        return f"BiPoly({sorted(self.terms.items())!r} over {self.ctx!r})"


def bipoly_eval(F: BiPoly, x, y) -> FieldElem:
    return F.eval(x, y)


# --- rational functions -----------------------------------------------------------


class RationalFunc:
    """Coprime pair f/g with a monic denominator; equal iff coefficients equal."""

    __slots__ = ("num", "den")

    def __init__(self, num: UniPoly, den: UniPoly, normalized: bool = False):
        if num.ctx != den.ctx:
            raise CtxMismatch("numerator and denominator over different fields")
        if den.is_zero():
            raise ZeroDenominator("denominator is the zero polynomial")
        if not normalized:
            rf = rational_normalize(num, den)
            num, den = rf.num, rf.den
        self.num = num
        self.den = den

    @property
    def ctx(self):
        return self.num.ctx

    @property
    def d(self):
        return self.num.degree

    @property
    def e(self):
        return self.den.degree

    @property
    def ell(self):
        return min(self.d, self.e)

    @property
    def m(self):
        return max(self.d, self.e)

    @property
    def D(self):
        return max(self.d, self.e)

    def is_constant(self):
        return self.num.is_constant() and self.den.is_constant()

    def is_polynomial(self):
        return self.den.degree == 0

    def eval_raw(self, x_raw):
        """Value as a raw element, or None at a pole."""
        gv = self.den.eval_raw(x_raw)
        if self.ctx.is_zero_raw(gv):
            return None
        fv = self.num.eval_raw(x_raw)
        return self.ctx.rmul(fv, self.ctx.rinv(gv))

    def eval(self, x) -> FieldElem:
        x = self.ctx.el(x)
        v = self.eval_raw(x.raw)
        if v is None:
            raise PoleAt(x.raw)
        return FieldElem(self.ctx, v)

    def scale(self, c) -> "RationalFunc":
        return rational_normalize(self.num * c, self.den)

    def shift(self, a) -> "RationalFunc":
        """Substitute X -> X + a."""
        return rational_normalize(self.num.shift(a), self.den.shift(a))

    def text(self) -> str:
        if self.den.degree == 0 and self.den.is_monic():
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def key(self):
        return (self.num.key(), self.den.key())

    def __eq__(self, other):
        return (
            isinstance(other, RationalFunc)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return f"RationalFunc({self.text()!r}, p={self.ctx.p})"


def rational_normalize(f: UniPoly, g: UniPoly) -> RationalFunc:
    """Strip the common factor and make the denominator monic."""
    if f.ctx != g.ctx:
        raise CtxMismatch("numerator and denominator over different fields")
    if g.is_zero():
        raise ZeroDenominator("denominator is the zero polynomial")
    ctx = f.ctx
    if f.is_zero():
        return RationalFunc(f, UniPoly.one(ctx), normalized=True)
    h = poly_gcd(f, g)
    if h.degree >= 1:
        f = f // h
        g = g // h
    lc_inv = ctx.rinv(g.lc)
    f = f * FieldElem(ctx, lc_inv)
    g = g * FieldElem(ctx, lc_inv)
    return RationalFunc(f, g, normalized=True)


def rational_eval(psi: RationalFunc, x) -> FieldElem:
    return psi.eval(x)


def rational_compose(R: RationalFunc, F: RationalFunc) -> RationalFunc:
    """R(F(X)), normalized; checks deg(R o F) = deg R * deg F when F is nonconstant."""
    if R.ctx != F.ctx:
        raise CtxMismatch("operands over different fields")
    ctx = R.ctx
    if F.is_constant():
        # evaluate R at the constant value of F
        c = F.eval(0)
        gv = R.den.eval(c)
        if gv.is_zero():
            raise PoleAt(c.raw)
        val = R.num.eval(c) / gv
        return RationalFunc(UniPoly(ctx, (val.raw,), raw=True), UniPoly.one(ctx), normalized=True)
    u, v = F.num, F.den
    dn = R.num.degree if not R.num.is_zero() else 0
    big = max(dn, R.den.degree)
    num = UniPoly.zero(ctx)
    den = UniPoly.zero(ctx)
    u_pows = [UniPoly.one(ctx)]
    v_pows = [UniPoly.one(ctx)]
    for _ in range(big):
        u_pows.append(u_pows[-1] * u)
        v_pows.append(v_pows[-1] * v)
    for i, c in enumerate(R.num.coeffs):
        if not ctx.is_zero_raw(c):
            num = num + (u_pows[i] * v_pows[big - i]) * FieldElem(ctx, c)
    for j, c in enumerate(R.den.coeffs):
        if not ctx.is_zero_raw(c):
            den = den + (u_pows[j] * v_pows[big - j]) * FieldElem(ctx, c)
    if den.is_zero():
        raise ZeroDenominator("composition denominator vanished")
    out = rational_normalize(num, den)
    expected = (R.D if not R.is_constant() else 0) * (F.D if not F.is_constant() else 0)
    got = out.D if not out.is_constant() else 0
    if got != expected:
        raise DegreeLawViolation(
            f"deg(R o F) = {got}, expected deg R * deg F = {expected}"
        )
    return out
