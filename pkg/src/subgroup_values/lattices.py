"""Integer lattices: exact volumes, shortest vectors in the infinity norm, and
the small-residue multiplier construction built on them.

Shortest vectors come from a complete depth-first enumeration (exact rational
Gram-Schmidt bounds) of the ball guaranteed by the volume bound; the basis is
LLL-reduced first purely as an accelerator, never as a correctness dependency.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    MultiplierNotFound,
    PreconditionViolated,
    RankDeficient,
    SearchSpaceTooLarge,
)
from .fields import centered_residue, mod_inverse
from .surd import Surd

MAX_ENUM_DIM = 6
NODE_BUDGET = 10**8

V_SCAN_LIMIT = 10**6


# --- exact linear algebra helpers ---------------------------------------------


def _bareiss_det(rows) -> int:
    """Exact determinant of a square integer matrix (fraction-free)."""
    m = [list(r) for r in rows]
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def _gram(cols):
    return [[sum(a * b for a, b in zip(u, v)) for v in cols] for u in cols]


def _introot(n: int, k: int) -> int:
    """floor(n^(1/k)) for n >= 0."""
    if n < 0:
        raise ValueError("negative radicand")
    if n == 0:
        return 0
    if k == 1:
        return n
    if k == 2:
        return math.isqrt(n)
    x = int(round(n ** (1.0 / k))) if n < 10**15 else int(math.exp(math.log(n) / k))
    x = max(x, 1)
    while (x + 1) ** k <= n:
        x += 1
    while x**k > n:
        x -= 1
    return x


@dataclass(frozen=True)
class LatticeBasis:
    """Columns are linearly independent integer vectors in Z^dim."""

    cols: tuple
    row_scales: tuple | None = None
    gram_det: int = field(init=False)

    def __post_init__(self):
        cols = tuple(tuple(int(x) for x in c) for c in self.cols)
        object.__setattr__(self, "cols", cols)
        if not cols:
            raise RankDeficient("empty basis")
        dims = {len(c) for c in cols}
        if len(dims) != 1:
            raise ValueError("columns of unequal length")
        if len(cols) > len(cols[0]):
            raise RankDeficient("more columns than ambient dimensions")
        gd = _bareiss_det(_gram(cols))
        if gd == 0:
            raise RankDeficient("columns are linearly dependent")
        object.__setattr__(self, "gram_det", gd)

    @property
    def rank(self) -> int:
        return len(self.cols)

    @property
    def dim(self) -> int:
        return len(self.cols[0])


def lattice_volume(B: LatticeBasis):
    """Exact |det| for a square basis; sqrt of the exact Gram determinant otherwise."""
    if B.rank == B.dim:
        return abs(_bareiss_det([[c[i] for c in B.cols] for i in range(B.dim)]))
    gd = B.gram_det
    r = math.isqrt(gd)
    return r if r * r == gd else math.sqrt(gd)


# --- LLL (internal accelerator only) --------------------------------------------


def _lll_reduce(cols):
    """Exact-arithmetic LLL; returns (reduced columns, transform U) with
    reduced[i] = sum_j U[i][j] * cols[j]."""
    n = len(cols)
    b = [list(c) for c in cols]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if n == 1:
        return b, U
    delta = Fraction(99, 100)

    def dot(u, v):
        return sum(Fraction(a) * Fraction(c) for a, c in zip(u, v))

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        Bv = []
        bstar = []
        for i in range(n):
            v = [Fraction(x) for x in b[i]]
            for j in range(i):
                mu[i][j] = dot(b[i], bstar[j]) / Bv[j]
                v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
            bstar.append(v)
            Bv.append(dot(v, v))
        return mu, Bv

    mu, Bv = gso()
    k = 1
    steps = 0
    while k < n:
        steps += 1
        if steps > 10000:
            break  # fall back to the current (still correct) basis
        for j in range(k - 1, -1, -1):
            if abs(mu[k][j]) > Fraction(1, 2):
                m = round(mu[k][j])
                b[k] = [x - m * y for x, y in zip(b[k], b[j])]
                U[k] = [x - m * y for x, y in zip(U[k], U[j])]
                mu, Bv = gso()
        if Bv[k] >= (delta - mu[k][k - 1] ** 2) * Bv[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            U[k], U[k - 1] = U[k - 1], U[k]
            mu, Bv = gso()
            k = max(k - 1, 1)
    return b, U


# --- exact enumeration ------------------------------------------------------------


def _interval(center: Fraction, w2: Fraction):
    """All integers z with (z - center)^2 <= w2, as an inclusive (lo, hi)."""
    if w2 < 0:
        return 1, 0
    cn, cd = center.numerator, center.denominator
    wn, wd = w2.numerator, w2.denominator
    a = math.isqrt(wn * wd)  # a <= sqrt(wn*wd) < a + 1
    hi = (cn * wd + cd * (a + 1)) // (cd * wd)
    while Fraction(hi) > center and (Fraction(hi) - center) ** 2 > w2:
        hi -= 1
    lo = -(((-cn) * wd + cd * (a + 1)) // (cd * wd))
    while Fraction(lo) < center and (Fraction(lo) - center) ** 2 > w2:
        lo += 1
    return lo, hi


def _enumerate_ball(cols, linf_bound: int):
    """All nonzero lattice vectors with infinity norm <= linf_bound, complete.

    Enumerates the L2 ball of radius sqrt(dim) * linf_bound with exact
    rational pruning, then filters by the infinity norm.
    """
    r = len(cols)
    s = len(cols[0])
    R2 = Fraction(s * linf_bound * linf_bound)

    mu = [[Fraction(0)] * r for _ in range(r)]
    Bv = []
    bstar = []
    for i in range(r):
        v = [Fraction(x) for x in cols[i]]
        for j in range(i):
            num = sum(Fraction(a) * y for a, y in zip(cols[i], bstar[j]))
            mu[i][j] = num / Bv[j]
            v = [x - mu[i][j] * y for x, y in zip(v, bstar[j])]
        bstar.append(v)
        d = sum(x * x for x in v)
        if d == 0:
            raise RankDeficient("columns are linearly dependent")
        Bv.append(d)

    out = []
    coeffs = [0] * r
    nodes = 0

    def go(level, used):
        nonlocal nodes
        center = -sum(mu[j][level] * coeffs[j] for j in range(level + 1, r))
        lo, hi = _interval(center, (R2 - used) / Bv[level])
        for z in range(lo, hi + 1):
            nodes += 1
            if nodes > NODE_BUDGET:
                raise SearchSpaceTooLarge(f"enumeration exceeded {NODE_BUDGET} nodes")
            coeffs[level] = z
            add = (Fraction(z) - center) ** 2 * Bv[level]
            nxt = used + add
            if nxt > R2:
                continue
            if level == 0:
                vec = tuple(
                    sum(coeffs[i] * cols[i][t] for i in range(r)) for t in range(s)
                )
                if any(vec) and max(abs(x) for x in vec) <= linf_bound:
                    out.append((vec, tuple(coeffs)))
            else:
                go(level - 1, nxt)
        coeffs[level] = 0

    go(r - 1, Fraction(0))
    return out


def _canonical(vec, coeffs):
    """Flip signs so the last nonzero coordinate is positive."""
    for x in reversed(vec):
        if x:
            if x < 0:
                return tuple(-v for v in vec), tuple(-c for c in coeffs)
            break
    return vec, coeffs


def _short_candidates(B: LatticeBasis):
    """Deduplicated lattice vectors within the volume bound, sorted by
    (norm, tie-break); coefficients refer to the input basis."""
    if B.rank > MAX_ENUM_DIM:
        raise SearchSpaceTooLarge(f"rank {B.rank} exceeds the enumeration cap {MAX_ENUM_DIM}")
    reduced, U = _lll_reduce(B.cols)
    bound = _introot(B.gram_det, 2 * B.rank)  # floor(vol^(1/rank))
    bound = max(bound, 1)
    bound = min(bound, min(max(abs(x) for x in col) for col in reduced))
    raw = _enumerate_ball(reduced, bound)
    seen = {}
    for vec, cred in raw:
        corig = tuple(
            sum(cred[i] * U[i][j] for i in range(B.rank)) for j in range(B.rank)
        )
        vec_c, coeffs_c = _canonical(vec, corig)
        norm = max(abs(x) for x in vec_c)
        l2 = sum(x * x for x in vec_c)
        if vec_c not in seen:
            seen[vec_c] = (norm, l2, vec_c, coeffs_c)
    cands = sorted(seen.values(), key=lambda t: (t[0], t[1], tuple(-x for x in t[2])))
    return [(n, v, c) for n, _, v, c in cands]


def shortest_vector_enum(B: LatticeBasis) -> tuple:
    """A nonzero lattice vector of minimal infinity norm, found by exact
    enumeration within the volume bound.

    Ties are broken deterministically: smallest euclidean norm next, then the
    sign is fixed so the last nonzero coordinate is positive, and the
    lexicographically largest remaining vector is returned.
    """
    cands = _short_candidates(B)
    assert cands, "volume bound excluded every vector (impossible)"
    return cands[0][1]


# --- small-residue multipliers ------------------------------------------------------


def _as_exact(v):
    if isinstance(v, Surd):
        return v
    return Fraction(v)


def _floor_bound(v) -> int:
    if isinstance(v, Surd):
        return v.floor()
    f = Fraction(v)
    return f.numerator // f.denominator


@dataclass(frozen=True)
class SmallResidueInstance:
    """Inputs of the small-residue multiplier problem: find v coprime to p with
    centered_residue(b_i * v) <= V_i for every i."""

    p: int
    b: tuple
    bounds: tuple

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        object.__setattr__(self, "bounds", tuple(self.bounds))
        if len(self.b) != len(self.bounds) or not self.b:
            raise ValueError("b and bounds must be nonempty and of equal length")

    @property
    def s(self) -> int:
        return len(self.b)

    def floored_bounds(self) -> tuple:
        return tuple(_floor_bound(v) for v in self.bounds)

    def validate(self) -> None:
        """Check 1 <= V_i < p for all i and prod V_i > p^(s-1), exactly."""
        p = self.p
        for i, v in enumerate(self.bounds):
            ev = _as_exact(v)
            if not ev >= 1:
                raise PreconditionViolated(f"V[{i}] = {v} violates V_i >= 1")
            if not ev < p:
                raise PreconditionViolated(f"V[{i}] = {v} violates V_i < p = {p}")
        prod = Surd(1)
        for v in self.bounds:
            prod = prod * (v if isinstance(v, Surd) else Fraction(v))
        target = Fraction(p) ** (self.s - 1)
        if not prod > target:
            raise PreconditionViolated(
                f"prod V_i = {float(prod):.6g} violates prod > p^(s-1) = {target}"
            )

    def satisfied_by(self, v: int) -> bool:
        if math.gcd(v, self.p) != 1:
            return False
        W = self.floored_bounds()
        return all(centered_residue(bi * v, self.p) <= wi for bi, wi in zip(self.b, W))


def build_red_basis(inst: SmallResidueInstance) -> LatticeBasis:
    """The s x s matrix of the multiplier construction, with b_1 normalized to 1.

    Rows run b_s V/V_s, ..., b_2 V/V_2, V/V_1 down the first column; column j
    (j >= 2) holds p V/V_j in the row of index j. Rational V_i are kept exact
    by scaling each row to integers; the per-row scale factors are recorded.
    """
    inst.validate()
    p = inst.p
    s = inst.s
    if inst.b[0] % p == 0:
        raise PreconditionViolated("b[0] must be invertible mod p; reorder the system")
    inv1 = mod_inverse(inst.b[0], p)
    nb = [bi * inv1 % p for bi in inst.b]
    V_ex = []
    for v in inst.bounds:
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            V_ex.append(Fraction(v))
        else:
            V_ex.append(Fraction(_floor_bound(v)))
    vprod = Fraction(1)
    for v in V_ex:
        vprod *= v
    rows = []
    for r in range(s):
        i = s - r  # index of the b entry carried by this row
        row = [Fraction(0)] * s
        if i >= 2:
            row[0] = nb[i - 1] * vprod / V_ex[i - 1]
            row[i - 1] = p * vprod / V_ex[i - 1]
        else:
            row[0] = vprod / V_ex[0]
        rows.append(row)
    scales = []
    int_rows = []
    for row in rows:
        den = math.lcm(*[f.denominator for f in row])
        scales.append(den)
        int_rows.append([int(f * den) for f in row])
    cols = tuple(tuple(int_rows[r][c] for r in range(s)) for c in range(s))
    return LatticeBasis(cols, row_scales=tuple(scales))


def _exhaustive_multiplier_scan(inst: SmallResidueInstance):
    for v in range(1, inst.p):
        if inst.satisfied_by(v):
            return v
    return None


def find_small_residue_multiplier(inst: SmallResidueInstance) -> int:
    """An integer v in [1, p) with gcd(v, p) = 1 and centered_residue(b_i v) <= V_i.

    The primary route reads v off the first coefficient of a short vector of
    build_red_basis; if that coefficient is divisible by p the next-shortest
    candidates are tried, and for p <= 10^6 a direct scan backs the search up.
    Under the validated preconditions a valid v always exists.
    """
    inst.validate()
    p = inst.p
    if inst.s > MAX_ENUM_DIM:
        raise SearchSpaceTooLarge(f"s = {inst.s} exceeds the dimension cap {MAX_ENUM_DIM}")
    order = [i for i in range(inst.s) if inst.b[i] % p != 0]
    if not order:
        return 1
    pivot = order[0]
    perm = [pivot] + [i for i in range(inst.s) if i != pivot]
    binv = mod_inverse(inst.b[pivot], p)
    inst_norm = SmallResidueInstance(
        p,
        tuple(inst.b[i] * binv % p for i in perm),
        tuple(inst.bounds[i] for i in perm),
    )
    basis = build_red_basis(inst_norm)
    for _, _, coeffs in _short_candidates(basis):
        w = coeffs[0] % p
        if w == 0:
            continue
        v = w * binv % p
        if inst.satisfied_by(v):
            return v
        break  # the shortest usable vector should work; fall back to scanning
    if p <= V_SCAN_LIMIT:
        v = _exhaustive_multiplier_scan(inst)
        if v is not None:
            return v
    raise MultiplierNotFound(
        f"no multiplier found for {inst!r}; this contradicts the construction"
    )
