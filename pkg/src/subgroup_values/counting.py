"""Brute-force ground truth for the counting quantities: subgroup membership
counts over intervals, value-set intersections, shortest covering intervals,
power-sum solution counts, congruent pairs, and integer points in boxes.
"""

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import (
    AllWindowsContainPoles,
    BudgetExceeded,
    FieldMismatch,
    OrderDoesNotDivide,
    PreconditionViolated,
    ZeroLambda,
)
from .fields import check_prime, prime_factors
from .polynomials import RationalFunc, UniPoly, rational_normalize


def smallest_primitive_root(p: int) -> int:
    check_prime(p)
    if p == 2:
        return 1
    qs = prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // q, p) != 1 for q in qs):
            return g
    raise AssertionError("no primitive root found (p not prime?)")


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup {y : y^order = 1} of F_p*."""

    p: int
    order: int
    generator: int

    def __contains__(self, y: int) -> bool:
        y %= self.p
        return y != 0 and pow(y, self.order, self.p) == 1

    def elements(self) -> tuple:
        out = set()
        cur = 1
        for _ in range(self.order):
            out.add(cur)
            cur = cur * self.generator % self.p
        return tuple(sorted(out))


def subgroup_of_order(p: int, T: int) -> Subgroup:
    """Subgroup of order T generated by g^((p-1)/T) for the smallest primitive root g."""
    check_prime(p)
    if T < 1 or (p - 1) % T != 0:
        raise OrderDoesNotDivide(f"{T} does not divide p - 1 = {p - 1}")
    g = smallest_primitive_root(p)
    gen = pow(g, (p - 1) // T, p)
    sub = Subgroup(p, T, gen)
    assert pow(gen, T, p) == 1
    for q in prime_factors(T):
        assert pow(gen, T // q, p) != 1
    return sub


@dataclass(frozen=True)
class Interval:
    """The residues u+1, ..., u+H; with wrap=False they must stay below p."""

    u: int
    H: int
    wrap: bool = False

    def __post_init__(self):
        if self.H < 1:
            raise PreconditionViolated(f"interval length {self.H} < 1")

    def xs(self, p: int):
        if self.wrap:
            for i in range(1, self.H + 1):
                yield (self.u + i) % p
        else:
            if self.u < 0 or self.u + self.H >= p:
                raise PreconditionViolated(
                    f"interval {self.u}+1..{self.u}+{self.H} leaves [0, {p}) and wrap is off"
                )
            yield from range(self.u + 1, self.u + self.H + 1)


class SubgroupCount(NamedTuple):
    count: int
    witnesses: tuple


def count_values_in_subgroup(psi: RationalFunc, interval: Interval, G: Subgroup) -> SubgroupCount:
    """Number of x in the interval with g(x) != 0 and ψ(x) in G, plus the x's.

    Poles are skipped; this counts argument-side witnesses, not distinct values.
    """
    p = psi.ctx.p
    if psi.ctx.t != 1 or p != G.p:
        raise FieldMismatch("ψ and the subgroup live over different prime fields")
    witnesses = []
    T = G.order
    for x in interval.xs(p):
        v = psi.eval_raw(x)
        if v is None:
            continue
        if v != 0 and pow(v, T, p) == 1:
            witnesses.append(x)
    return SubgroupCount(len(witnesses), tuple(witnesses))


def count_value_set_intersection(psi: RationalFunc, S, T) -> int:
    """#(ψ(S) ∩ T): set semantics, distinct values only."""
    values = set()
    for x in S:
        v = psi.eval_raw(psi.ctx.el(int(x)).raw)
        if v is not None:
            values.add(v)
    tset = {psi.ctx.el(int(y)).raw for y in T}
    return len(values & tset)


def _cover_length(values, p: int, wrap: bool) -> int:
    vs = sorted(set(values))
    if not wrap:
        return vs[-1] - vs[0] + 1
    if len(vs) == 1:
        return 1
    best_gap = 0
    for a, b in zip(vs, vs[1:]):
        best_gap = max(best_gap, b - a)
    best_gap = max(best_gap, vs[0] + p - vs[-1])
    return p - best_gap + 1


def shortest_covering_interval(f, H: int, p: int, wrap: bool = False) -> int:
    """Length of the shortest interval containing H consecutive values of f.

    Scans every start u; windows containing a pole are skipped. With wrap=False
    both the argument window and the value interval are ordinary integer
    ranges; with wrap=True both are cyclic mod p.
    """
    check_prime(p)
    if H < 1:
        raise PreconditionViolated("H must be >= 1")
    if H >= p:
        raise PreconditionViolated("H must be < p")
    if isinstance(f, UniPoly):
        f = rational_normalize(f, UniPoly.one(f.ctx))
    if f.ctx.p != p or f.ctx.t != 1:
        raise FieldMismatch("f lives over a different prime field")
    starts = range(p) if wrap else range(p - H)
    best = None
    for u in starts:
        values = []
        ok = True
        for i in range(1, H + 1):
            x = (u + i) % p if wrap else u + i
            v = f.eval_raw(x)
            if v is None:
                ok = False
                break
            values.append(v)
        if not ok:
            continue
        k = _cover_length(values, p, wrap)
        if best is None or k < best:
            best = k
    if best is None:
        raise AllWindowsContainPoles(f"every length-{H} window meets a pole of {f.text()}")
    return best


def vinogradov_count(d: int, k: int, H: int, budget: int = 10**9) -> int:
    """Number of 2k-tuples in [1, H] with equal power sums up to exponent d.

    Counted by joining the k-tuple power-sum signatures of both sides; the
    budget guards the naive d*k*H^(2k) work metric.
    """
    if d < 1 or k < 1 or H < 1:
        raise PreconditionViolated("d, k, H must all be >= 1")
    if d * k * H ** (2 * k) > budget:
        raise BudgetExceeded(f"d*k*H^(2k) = {d * k * H ** (2 * k)} exceeds {budget}")
    sigs: dict = {}
    idx = [1] * k
    while True:
        sig = tuple(sum(x**nu for x in idx) for nu in range(1, d + 1))
        sigs[sig] = sigs.get(sig, 0) + 1
        pos = k - 1
        while pos >= 0 and idx[pos] == H:
            idx[pos] = 1
            pos -= 1
        if pos < 0:
            break
        idx[pos] += 1
    return sum(c * c for c in sigs.values())


def congruent_pairs(psi: RationalFunc, lam: int, H: int, p: int) -> list:
    """All (x, y) in [1, H]^2, poles excluded, with ψ(x) = λ ψ(y) mod p."""
    if psi.ctx.p != p or psi.ctx.t != 1:
        raise FieldMismatch("ψ lives over a different prime field")
    lam = int(lam) % p
    if lam == 0:
        raise ZeroLambda("λ = 0 is excluded")
    if H >= p:
        raise PreconditionViolated("H must be < p")
    vals = {}
    by_value: dict = {}
    for x in range(1, H + 1):
        v = psi.eval_raw(x)
        if v is None:
            continue
        vals[x] = v
        by_value.setdefault(v, []).append(x)
    pairs = []
    for y in sorted(vals):
        target = lam * vals[y] % p
        for x in by_value.get(target, ()):
            pairs.append((x, y))
    pairs.sort()
    return pairs


class BoxPointCount(NamedTuple):
    count: int
    curve_degree: int
    h_root: float | None
    reference: float | None  # H^(1/n) * exp(12 sqrt(n log H log log H)); context only


def _int_terms(F) -> dict:
    if isinstance(F, dict):
        return {k: int(v) for k, v in F.items() if int(v) != 0}
    raise TypeError("expected a dict {(i, j): int coefficient}")


def _eval_int_bipoly(terms: dict, x: int, y: int) -> int:
    return sum(c * x**i * y**j for (i, j), c in terms.items())


def _next_prime_above(n: int) -> int:
    from .fields import is_prime

    c = n + 1
    while not is_prime(c):
        c += 1
    return c


def _roots_mod(coeffs: list, P: int) -> list:
    """Roots in F_P of a nonzero integer-coefficient polynomial, via the field
    factorization machinery."""
    from .factorization import _u_roots
    from .fields import FieldCtx

    ctx = FieldCtx(P)
    f = [c % P for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    if not f:
        return list(range(P))
    return _u_roots(ctx, f)


def integral_points_in_box(F, H: int) -> BoxPointCount:
    """Exact count of integer points (x, y) in [0, H]^2 with F(x, y) = 0.

    F is a dict {(i, j): integer coefficient}. Small boxes are scanned
    directly; otherwise each column x is solved for y by root-finding modulo a
    prime above 2H and every candidate verified in exact integer arithmetic.
    The attached reference magnitude is reported for context only.
    """
    terms = _int_terms(F)
    if not terms:
        raise PreconditionViolated("F must be nonzero")
    if H < 0 or H > 10**6:
        raise PreconditionViolated("H must be in 0..10^6")
    n = max(i + j for i, j in terms)

    count = 0
    if (H + 1) ** 2 <= 10**6:
        for x in range(H + 1):
            col = {}
            for (i, j), c in terms.items():
                col[j] = col.get(j, 0) + c * x**i
            for y in range(H + 1):
                acc = 0
                for j, c in col.items():
                    acc += c * y**j
                if acc == 0:
                    count += 1
    else:
        P = _next_prime_above(2 * H + 1)
        degy = max(j for _, j in terms)
        for x in range(H + 1):
            col = [0] * (degy + 1)
            for (i, j), c in terms.items():
                col[j] += c * x**i
            if all(c == 0 for c in col):
                count += H + 1
                continue
            for y0 in _roots_mod(col, P):
                if y0 <= H and _eval_int_bipoly(terms, x, y0) == 0:
                    count += 1

    h_root = None
    reference = None
    if n >= 2 and H >= 3:
        h_root = H ** (1.0 / n)
        reference = h_root * math.exp(12 * math.sqrt(n * math.log(H) * math.log(math.log(H))))
    return BoxPointCount(count, n, h_root, reference)
