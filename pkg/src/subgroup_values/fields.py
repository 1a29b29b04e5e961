"""Exact arithmetic in F_p and its extensions F_{p^t} at desk scale.

Elements travel in a compact "raw" form: a plain int in [0, p) when t = 1,
or a length-t tuple of ints (ascending powers of the generator) when t > 1.
FieldElem wraps a raw value with its context for the public API; hot loops
call the context methods on raws directly.
"""

import functools
from dataclasses import dataclass

from .errors import (
    CtxMismatch,
    DegreeTooLarge,
    NonInvertible,
    NotPrime,
    PrimeTooLarge,
    ZeroInverse,
)

NEG_INF = float("-inf")  # degree of the zero polynomial

PRIME_LIMIT = 1 << 32
MAX_EXT_DEGREE = 12

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin; the witness set is exact far beyond 2^32."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p >= PRIME_LIMIT:
        raise PrimeTooLarge(f"p = {p} exceeds the 2^32 desk-scale cap")


def mod_inverse(a: int, p: int) -> int:
    """Inverse of a modulo a prime p, in [1, p)."""
    a %= p
    if a == 0:
        raise NonInvertible(f"{p} divides the argument")
    return pow(a, -1, p)


def centered_residue(a: int, p: int) -> int:
    """Smallest absolute value of a residue class mod p; lands in [0, p/2]."""
    if p < 2:
        raise ValueError("modulus must be >= 2")
    r = a % p
    return min(r, p - r)


def signed_residue(a: int, p: int) -> int:
    """Representative of a mod p in [-(p-1)/2, p/2]."""
    r = a % p
    return r - p if r > p // 2 else r


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n by trial division (n < 2^64 desk scale)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# --- dense int-list polynomial helpers over F_p (modulus bootstrap only) -----

def _lp_strip(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _lp_sub(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out[i] = (x - y) % p
    return _lp_strip(out)


def _lp_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _lp_strip(out)


def _lp_rem(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            shift = len(a) - 1 - dm
            for i in range(dm):
                a[shift + i] = (a[shift + i] - c * m[i]) % p
        a.pop()
        _lp_strip(a)
    return a


def _lp_powmod(base, e, m, p):
    result = [1]
    b = _lp_rem(base, m, p)
    while e:
        if e & 1:
            result = _lp_rem(_lp_mul(result, b, p), m, p)
        b = _lp_rem(_lp_mul(b, b, p), m, p)
        e >>= 1
    return result


def _lp_gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _lp_rem_general(a, b, p)
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _lp_rem_general(a, b, p):
    # b need not be monic
    inv = pow(b[-1], -1, p)
    monic = [c * inv % p for c in b]
    return _lp_rem(a, monic, p)


def _lp_extgcd(a, b, p):
    # returns (g, u, v) with u*a + v*b = g, g monic (or [] when both zero)
    r0, r1 = _lp_strip(list(a)), _lp_strip(list(b))
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        inv = pow(r1[-1], -1, p)
        monic = [c * inv % p for c in r1]
        # quotient of r0 by r1
        q = []
        rem = list(r0)
        d1 = len(r1) - 1
        qlen = max(len(rem) - d1, 0)
        q = [0] * qlen
        while rem and len(rem) - 1 >= d1:
            c = rem[-1]
            shift = len(rem) - 1 - d1
            qc = c * inv % p
            q[shift] = qc
            for i in range(d1 + 1):
                rem[shift + i] = (rem[shift + i] - qc * r1[i]) % p
            _lp_strip(rem)
        r0, r1 = r1, rem
        s0, s1 = s1, _lp_sub(s0, _lp_mul(q, s1, p), p)
        t0, t1 = t1, _lp_sub(t0, _lp_mul(q, t1, p), p)
    if r0:
        inv = pow(r0[-1], -1, p)
        r0 = [c * inv % p for c in r0]
        s0 = [c * inv % p for c in s0]
        t0 = [c * inv % p for c in t0]
    return r0, s0, t0


def _lp_is_irreducible(f, p):
    """Irreducibility of a monic f over F_p via the Frobenius fixed-point test."""
    t = len(f) - 1
    if t < 1:
        return False
    if t == 1:
        return True
    x = [0, 1]
    for ell in prime_factors(t):
        g = x
        for _ in range(t // ell):
            g = _lp_powmod(g, p, f, p)
        d = _lp_sub(g, x, p)
        if not d:
            return False
        if len(_lp_gcd(d, f, p)) - 1 != 0:
            return False
    g = x
    for _ in range(t):
        g = _lp_powmod(g, p, f, p)
    return g == x


# --- field contexts -----------------------------------------------------------


class FieldCtx:
    """Immutable arithmetic context for F_{p^t}; every operation is pure."""

    __slots__ = ("p", "t", "modulus", "q", "_mred")

    def __init__(self, p: int, t: int = 1, modulus=None):
        check_prime(p)
        if not isinstance(t, int) or t < 1 or t > MAX_EXT_DEGREE:
            raise DegreeTooLarge(f"extension degree must be in 1..{MAX_EXT_DEGREE}, got {t}")
        self.p = p
        self.t = t
        self.q = p**t
        if t == 1:
            if modulus is not None:
                raise ValueError("a prime field takes no modulus")
            self.modulus = None
            self._mred = None
        else:
            if modulus is None:
                raise ValueError("an extension field needs a modulus; use ext_field_build")
            m = tuple(int(c) % p for c in modulus)
            if len(m) != t + 1 or m[-1] != 1:
                raise ValueError(f"modulus must be monic of degree {t}")
            if not _lp_is_irreducible(list(m), p):
                raise ValueError("modulus is not irreducible over F_p")
            self.modulus = m
            self._mred = tuple((p - c) % p for c in m[:-1])

    # -- raw arithmetic (int for t == 1, tuple of ints otherwise) --

    @property
    def zero_raw(self):
        return 0 if self.t == 1 else (0,) * self.t

    @property
    def one_raw(self):
        return 1 if self.t == 1 else (1,) + (0,) * (self.t - 1)

    def from_int(self, n: int):
        n %= self.p
        return n if self.t == 1 else (n,) + (0,) * (self.t - 1)

    def is_zero_raw(self, a) -> bool:
        return a == 0 if self.t == 1 else not any(a)

    def radd(self, a, b):
        if self.t == 1:
            return (a + b) % self.p
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def rsub(self, a, b):
        if self.t == 1:
            return (a - b) % self.p
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def rneg(self, a):
        if self.t == 1:
            return -a % self.p
        p = self.p
        return tuple(-x % p for x in a)

    def rmul(self, a, b):
        p = self.p
        if self.t == 1:
            return a * b % p
        t = self.t
        prod = [0] * (2 * t - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = (prod[i + j] + x * y) % p
        red = self._mred
        for i in range(2 * t - 2, t - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                base = i - t
                for j, rc in enumerate(red):
                    if rc:
                        prod[base + j] = (prod[base + j] + c * rc) % p
        return tuple(prod[:t])

    def rinv(self, a):
        if self.is_zero_raw(a):
            raise ZeroInverse("0 has no inverse")
        if self.t == 1:
            return pow(a, -1, self.p)
        g, u, _ = _lp_extgcd(list(a), list(self.modulus), self.p)
        if len(g) != 1:
            raise ZeroInverse("element is not invertible (modulus not irreducible?)")
        u = u[: self.t] + [0] * (self.t - len(u))
        return tuple(u[: self.t])

    def rpow(self, a, e: int):
        if e < 0:
            a = self.rinv(a)
            e = -e
        result = self.one_raw
        base = a
        while e:
            if e & 1:
                result = self.rmul(result, base)
            base = self.rmul(base, base)
            e >>= 1
        return result

    def frobenius(self, a):
        return self.rpow(a, self.p)

    def raw_key(self, a) -> int:
        """Total order on elements: the integer whose base-p digits are the coeffs."""
        if self.t == 1:
            return a
        n = 0
        for c in reversed(a):
            n = n * self.p + c
        return n

    def elements(self):
        """All field elements in ascending raw_key order."""
        if self.t == 1:
            yield from range(self.p)
            return
        p, t = self.p, self.t
        for n in range(self.q):
            digs = []
            rem = n
            for _ in range(t):
                digs.append(rem % p)
                rem //= p
            yield tuple(digs)

    def el(self, x) -> "FieldElem":
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise CtxMismatch("element belongs to a different field")
            return x
        if isinstance(x, int):
            return FieldElem(self, self.from_int(x))
        raw = tuple(int(c) % self.p for c in x)
        if len(raw) != self.t:
            raise ValueError(f"expected {self.t} coefficients, got {len(raw)}")
        if self.t == 1:
            return FieldElem(self, raw[0])
        return FieldElem(self, raw)

    @property
    def zero(self) -> "FieldElem":
        return FieldElem(self, self.zero_raw)

    @property
    def one(self) -> "FieldElem":
        return FieldElem(self, self.one_raw)

    def __eq__(self, other):
        return (
            isinstance(other, FieldCtx)
            and self.p == other.p
            and self.t == other.t
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.t, self.modulus))

    def __repr__(self):
        if self.t == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.p}^{self.t})"


@dataclass(frozen=True, slots=True)
class FieldElem:
    ctx: FieldCtx
    raw: object

    @property
    def coeffs(self) -> tuple:
        return (self.raw,) if self.ctx.t == 1 else self.raw

    def is_zero(self) -> bool:
        return self.ctx.is_zero_raw(self.raw)

    def _coerce(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise CtxMismatch("operands belong to different fields")
            return other.raw
        if isinstance(other, int):
            return self.ctx.from_int(other)
        return NotImplemented

    def __add__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.radd(self.raw, raw))

    __radd__ = __add__

    def __sub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.rsub(self.raw, raw))

    def __rsub__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.rsub(raw, self.raw))

    def __mul__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.rmul(self.raw, raw))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.rneg(self.raw))

    def __truediv__(self, other):
        raw = self._coerce(other)
        if raw is NotImplemented:
            return NotImplemented
        return FieldElem(self.ctx, self.ctx.rmul(self.raw, self.ctx.rinv(raw)))

    def __pow__(self, e: int):
        return FieldElem(self.ctx, self.ctx.rpow(self.raw, e))

    def inverse(self) -> "FieldElem":
        return FieldElem(self.ctx, self.ctx.rinv(self.raw))

    def __eq__(self, other):
        if isinstance(other, int):
            return self.raw == self.ctx.from_int(other)
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.raw == other.raw
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx.p, self.ctx.t, self.raw))

    def __int__(self):
        if self.ctx.t != 1:
            raise ValueError("only prime-field elements convert to int")
        return self.raw

    def __repr__(self):
        return f"FieldElem({self.raw} in {self.ctx!r})"


@functools.lru_cache(maxsize=None)
def ext_field_build(p: int, t: int) -> FieldCtx:
    """Context for F_{p^t} with the lexicographically smallest monic modulus.

    Candidates x^t + c_{t-1} x^{t-1} + ... + c_0 are ordered by the tuple
    (c_{t-1}, ..., c_0), so repeated builds agree byte for byte.
    """
    check_prime(p)
    if not isinstance(t, int) or t < 1 or t > MAX_EXT_DEGREE:
        raise DegreeTooLarge(f"extension degree must be in 1..{MAX_EXT_DEGREE}, got {t}")
    if t == 1:
        return FieldCtx(p)
    for n in range(p**t):
        digs = []
        rem = n
        for _ in range(t):
            digs.append(rem % p)
            rem //= p
        cand = digs + [1]
        if _lp_is_irreducible(cand, p):
            return FieldCtx(p, t, tuple(cand))
    raise AssertionError("no irreducible modulus found (unreachable)")
