"""Exponent algebra, level selection, and the end-to-end proof tracer for the
subgroup value-count bound, plus the sweep harness that drives it over a grid.

The tracer replays every constructive step on a concrete instance: scan the
exceptional multipliers, pick the most popular admissible one, build the
small-residue multiplier from the coefficient lattice, reduce the two sides to
centered integer polynomials, and verify the integer identity
F(x, y) = G(x, y) + z p at every congruent pair.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .counting import Interval, congruent_pairs, count_values_in_subgroup, subgroup_of_order
from .errors import (
    BadRange,
    DegenerateDegrees,
    LambdaSetExhausted,
    PerfectPowerInput,
    PreconditionViolated,
    SubgroupValuesError,
    WindowEmpty,
)
from .factorization import extract_power_root, perfect_power_exponent
from .fields import signed_residue
from .lambda_scan import exceptional_lambdas
from .lattices import SmallResidueInstance, find_small_residue_multiplier
from .parsing import parse_rational_expr
from .polynomials import RationalFunc
from .reporting import (
    STATUS_ERROR,
    STATUS_OK,
    STATUS_PERFECT_POWER,
    STATUS_WINDOW_EMPTY,
    ReportRow,
)
from .surd import Surd

MAX_SUPPORT_SIZE = 6  # lattice dimension cap; keeps the tracer at desk scale


@dataclass(frozen=True)
class ExponentSet:
    d: int
    e: int
    ell: int
    m: int
    k: int
    s: int
    theta: Fraction
    rho: Fraction
    tau: Fraction


def exponent_set(d: int, e: int) -> ExponentSet:
    """The exponent family attached to degrees (d, e)."""
    if d < 0 or e < 0 or d + e < 1:
        raise DegenerateDegrees(f"need d, e >= 0 and d + e >= 1, got ({d}, {e})")
    ell, m = min(d, e), max(d, e)
    k = (ell + 1) * (ell * m - ell * ell + m * m + m)
    s = 2 * m * ell + 2 * m - ell * ell
    return ExponentSet(
        d=d,
        e=e,
        ell=ell,
        m=m,
        k=k,
        s=s,
        theta=Fraction(1, 2 * s),
        rho=Fraction(k, 2 * s),
        tau=Fraction(1, 2 * (ell + m)),
    )


@dataclass(frozen=True)
class SupportSet:
    ell: int
    m: int
    pairs: tuple


def support_set(ell: int, m: int) -> SupportSet:
    """Index pairs carrying the nonconstant coefficients of the symmetrized
    polynomial; the size and degree-sum identities are re-checked on every call."""
    if not (0 <= ell <= m) or m < 1:
        raise BadRange(f"need 0 <= ell <= m and m >= 1, got ({ell}, {m})")
    pairs = tuple(
        (i, j)
        for i in range(m + 1)
        for j in range(m + 1)
        if i + j >= 1 and min(i, j) <= ell
    )
    s = 2 * m * ell + 2 * m - ell * ell
    k = (ell + 1) * (ell * m - ell * ell + m * m + m)
    assert len(pairs) == 2 * (m + 1) * (ell + 1) - (ell + 1) ** 2 - 1 == s
    assert sum(i + j for i, j in pairs) == k
    return SupportSet(ell=ell, m=m, pairs=pairs)


@dataclass(frozen=True)
class LevelSelection:
    """Levels V_{i,j} with V_{i,j} H^(i+j) = U and prod V_{i,j} = 2 p^(s-1).

    A single level family; no per-multiplier variant exists. All members are
    exact root expressions, so the product check is exact rational arithmetic.
    """

    p: int
    H: int
    U: Surd
    levels: dict
    product_check: Fraction

    def max_level(self) -> Surd:
        return self.levels[min(self.levels, key=lambda ij: ij[0] + ij[1])]

    def min_level(self) -> Surd:
        return self.levels[max(self.levels, key=lambda ij: ij[0] + ij[1])]


def _effective_c(p: int, H: int, exp: ExponentSet) -> float | None:
    # the window exists whenever H <= c p^(2 theta / (2 rho - 1)); report the
    # c this instance would need
    denom = 2 * exp.rho - 1
    if denom <= 0:
        return None
    return H / p ** float(2 * exp.theta / denom)


def select_test_levels(p: int, H: int, exp: ExponentSet) -> LevelSelection:
    """U = (2 p^(s-1) H^k)^(1/s) and the level family V_{i,j} = U / H^(i+j).

    Raises WindowEmpty (naming the violated inequality and the instance's
    effective window constant) when the largest level reaches p or the
    smallest drops below 1.
    """
    if H < 2:
        raise PreconditionViolated(f"H must be >= 2, got {H}")
    support = support_set(exp.ell, exp.m)
    s, k = exp.s, exp.k
    base = Fraction(2) * Fraction(p) ** (s - 1)
    U = Surd(base * Fraction(H) ** k, s)
    levels = {}
    for (i, j) in support.pairs:
        levels[(i, j)] = Surd(base * Fraction(H) ** (k - s * (i + j)), s)
    vmax = levels[(1, 0) if (1, 0) in levels else (0, 1)]
    if not vmax < p:
        raise WindowEmpty(
            f"max level U/H = {float(vmax):.6g} >= p = {p}",
            effective_c=_effective_c(p, H, exp),
        )
    vmin = levels[(exp.m, exp.ell) if (exp.m, exp.ell) in levels else (exp.ell, exp.m)]
    if not vmin >= 1:
        raise WindowEmpty(
            f"min level U/H^(m+ell) = {float(vmin):.6g} < 1",
            effective_c=_effective_c(p, H, exp),
        )
    prod = Surd(1)
    for v in levels.values():
        prod = prod * v
    product_check = prod.as_fraction()
    assert product_check == base
    return LevelSelection(p=p, H=H, U=U, levels=levels, product_check=product_check)


def value_count_bound(exp: ExponentSet, p: int, H: int, T: int, C: float = 1.0) -> float:
    """C (1 + H^rho p^-theta) H^tau sqrt(T); the o(1) factor is dropped and the
    value is only ever reported, never asserted."""
    if p <= 0 or H <= 0 or T < 0:
        raise PreconditionViolated("p, H must be positive and T nonnegative")
    return (
        C
        * (1.0 + H ** float(exp.rho) * p ** (-float(exp.theta)))
        * H ** float(exp.tau)
        * math.sqrt(T)
    )


def subgroup_order_lower_bound(exp: ExponentSet, H: int, p: int, variant: str = "rederived") -> float:
    """Lower bound on #G forced by a full-interval hit count.

    variant="original" evaluates min(H^(2-2tau), H^(1-2rho-2tau) p^(2theta)),
    the originally stated exponents; variant="rederived" uses 2-2rho-2tau in
    the second exponent, which is what direct inversion of the main bound at
    N = H gives. The two disagree and neither is asserted anywhere.
    """
    if variant not in ("original", "rederived"):
        raise BadRange(f"variant must be 'original' or 'rederived', got {variant!r}")
    first = H ** float(2 - 2 * exp.tau)
    if variant == "original":
        second = H ** float(1 - 2 * exp.rho - 2 * exp.tau) * p ** float(2 * exp.theta)
    else:
        second = H ** float(2 - 2 * exp.rho - 2 * exp.tau) * p ** float(2 * exp.theta)
    return min(first, second)


def reduce_perfect_power(psi: RationalFunc, T: int):
    """Rewrite a perfect power ψ = φ^n as (φ, n T): membership of ψ(x) in a
    subgroup of order T forces φ(x) into one of order at most n T."""
    if psi.is_constant():
        return psi, T
    n = perfect_power_exponent(psi)
    if n == 1:
        return psi, T
    return extract_power_root(psi, n), n * T


@dataclass(frozen=True)
class ProofTrace:
    p: int
    psi: RationalFunc
    H: int
    T: int
    count: int
    witnesses: tuple
    lambda_count: int
    chosen_lambda: int
    pair_count: int
    rt_lower: Fraction
    rt_ok: bool
    exponents: ExponentSet
    levels: LevelSelection
    multiplier: int
    F_int: dict
    G_int: dict
    pairs_z: tuple
    z_max: int
    z_magnitude: float
    bound: float
    ratio: float


def _eval_int_terms(terms: dict, x: int, y: int) -> int:
    return sum(c * x**i * y**j for (i, j), c in terms.items())


def _eval_int_terms_horner(terms: dict, x: int, y: int) -> int:
    # independent evaluation order for the second verification pass
    rows: dict = {}
    for (i, j), c in terms.items():
        rows.setdefault(i, {})[j] = c
    acc = 0
    for i in sorted(rows, reverse=True):
        row = rows[i]
        inner = 0
        prev = None
        for j in sorted(row, reverse=True):
            inner = row[j] if prev is None else inner * y ** (prev - j) + row[j]
            prev = j
        if prev:
            inner *= y**prev
        acc += inner * x**i
    return acc


def trace_proof(psi: RationalFunc, p: int, H: int, T: int, exceptional=None) -> ProofTrace:
    """Replay the constructive pipeline on one instance.

    exceptional may carry a precomputed set of exceptional λ values in F_p*
    (as ints); when None the scan runs here.
    """
    if psi.ctx.p != p or psi.ctx.t != 1:
        raise PreconditionViolated("ψ must live over F_p")
    if psi.is_constant() or psi.num.is_zero():
        raise DegenerateDegrees("ψ must be nonconstant")
    if perfect_power_exponent(psi) != 1:
        raise PerfectPowerInput(f"ψ = {psi.text()} is a perfect power")
    if not 2 <= H < p:
        raise PreconditionViolated(f"need 2 <= H < p, got H = {H}, p = {p}")
    exp = exponent_set(psi.d, psi.e)
    if exp.s > MAX_SUPPORT_SIZE:
        raise PreconditionViolated(
            f"support size s = {exp.s} exceeds the dimension cap {MAX_SUPPORT_SIZE}"
        )
    levels = select_test_levels(p, H, exp)
    G = subgroup_of_order(p, T)

    count, witnesses = count_values_in_subgroup(psi, Interval(0, H), G)

    if exceptional is None:
        exceptional = {int(w.lam) for w in exceptional_lambdas(psi, p).exceptional}
    else:
        exceptional = set(exceptional)
    lambda_count = len(exceptional)

    best_lam = None
    best_pairs = None
    for lam in G.elements():
        if lam in exceptional:
            continue
        pairs = congruent_pairs(psi, lam, H, p)
        if best_pairs is None or len(pairs) > len(best_pairs):
            best_lam, best_pairs = lam, pairs
    if best_lam is None:
        raise LambdaSetExhausted(
            f"every λ in the order-{T} subgroup is exceptional for ψ = {psi.text()}"
        )
    m3 = exp.m**3
    rt_lower = Fraction(max(count * count - 4 * m3 * count, 0), T)
    rt_ok = Fraction(len(best_pairs)) >= rt_lower

    support = support_set(exp.ell, exp.m)
    from .lambda_scan import build_sym_poly  # local import avoids a cycle

    sym = build_sym_poly(psi, best_lam)
    b_vec = tuple(int(sym.terms.get(pair, 0)) for pair in support.pairs)
    inst = SmallResidueInstance(
        p, b_vec, tuple(levels.levels[pair] for pair in support.pairs)
    )
    v = find_small_residue_multiplier(inst)

    F_terms = {}
    for i, a in enumerate(psi.num.coeffs):
        for j, b in enumerate(psi.den.coeffs):
            if a and b:
                F_terms[(i, j)] = signed_residue(v * a * b % p, p)
    G_terms = {}
    for j, a in enumerate(psi.num.coeffs):
        for i, b in enumerate(psi.den.coeffs):
            if a and b:
                G_terms[(i, j)] = signed_residue(v * best_lam * a * b % p, p)
    F_terms = {k: c for k, c in F_terms.items() if c}
    G_terms = {k: c for k, c in G_terms.items() if c}

    pairs_z = []
    for (x, y) in best_pairs:
        diff = _eval_int_terms(F_terms, x, y) - _eval_int_terms(G_terms, x, y)
        assert diff % p == 0, "congruent pair fails the integer congruence"
        pairs_z.append((x, y, diff // p))
    z_max = max((abs(z) for _, _, z in pairs_z), default=0)
    z_magnitude = p ** (-1.0 / exp.s) * H ** (exp.k / exp.s) + 1.0

    # independent second pass: different evaluation order, and the recorded
    # z-range must cover every pair
    for (x, y, z) in pairs_z:
        lhs = _eval_int_terms_horner(F_terms, x, y)
        rhs = _eval_int_terms_horner(G_terms, x, y)
        assert lhs - rhs == z * p
        assert abs(z) <= z_max

    bound = value_count_bound(exp, p, H, T)
    return ProofTrace(
        p=p,
        psi=psi,
        H=H,
        T=T,
        count=count,
        witnesses=witnesses,
        lambda_count=lambda_count,
        chosen_lambda=best_lam,
        pair_count=len(best_pairs),
        rt_lower=rt_lower,
        rt_ok=bool(rt_ok),
        exponents=exp,
        levels=levels,
        multiplier=v,
        F_int=F_terms,
        G_int=G_terms,
        pairs_z=tuple(pairs_z),
        z_max=z_max,
        z_magnitude=z_magnitude,
        bound=bound,
        ratio=count / bound,
    )


# --- sweeps -----------------------------------------------------------------------


def standard_sweep_cells() -> tuple:
    """The fixed regression corpus: three primes, three maps, window lengths
    3..8, and every subgroup order in 2..20 dividing p - 1."""
    cells = []
    for p in (31, 61, 101):
        ts = [t for t in range(2, 21) if (p - 1) % t == 0]
        for psi in ("x^2+x", "x^3+x", "(x^2+1)/(x+2)"):
            for H in range(3, 9):
                for T in ts:
                    cells.append({"p": p, "psi": psi, "H": H, "T": T, "u": 0})
    return tuple(cells)


def _evaluate_group(p: int, psi_text: str, cells: list) -> list:
    """Rows for all cells sharing (p, ψ); the λ scan is computed once."""
    rows = []
    try:
        psi = parse_rational_expr(psi_text, p)
        d = psi.num.degree if not psi.num.is_zero() else None
        e = psi.den.degree
    except SubgroupValuesError as ex:
        return [
            ReportRow(
                p=p, d=None, e=None, H=c["H"], T=c["T"], u=c.get("u", 0),
                N=None, bound=None, ratio=None, lambda_count=None,
                status=STATUS_ERROR, error=str(ex),
            )
            for c in cells
        ]

    lam_set = None
    lam_count = None
    perfect = False
    lam_error = ""
    try:
        report = exceptional_lambdas(psi, p)
        lam_set = {int(w.lam) for w in report.exceptional}
        lam_count = report.count
    except PerfectPowerInput:
        perfect = True
    except SubgroupValuesError as ex:
        lam_error = str(ex)

    for c in cells:
        H, T, u = c["H"], c["T"], c.get("u", 0)
        N = bound = ratio = None
        status = STATUS_OK
        error = ""
        try:
            psi_cell = psi.shift(u) if u else psi
            exp = exponent_set(psi_cell.d, psi_cell.e)
            G = subgroup_of_order(p, T)
            N = count_values_in_subgroup(psi, Interval(u, H), G).count
            bound = value_count_bound(exp, p, H, T)
            ratio = N / bound if bound else None
            if perfect:
                status = STATUS_PERFECT_POWER
            elif lam_error:
                status = STATUS_ERROR
                error = lam_error
            else:
                trace_proof(psi_cell, p, H, T, exceptional=lam_set)
        except WindowEmpty as ex:
            status = STATUS_WINDOW_EMPTY
            error = str(ex)
        except SubgroupValuesError as ex:
            status = STATUS_ERROR
            error = str(ex)
        rows.append(
            ReportRow(
                p=p, d=d, e=e, H=H, T=T, u=u, N=N, bound=bound, ratio=ratio,
                lambda_count=lam_count, status=status, error=error,
            )
        )
    return rows


def _group_worker(args):
    return _evaluate_group(*args)


def run_sweep(cells, jobs: int = 1) -> list:
    """One report row per cell; failures are recorded per row and never abort
    the sweep. Rows are sorted by (p, d, e, H, T, u) so output is independent
    of scheduling."""
    groups: dict = {}
    for c in cells:
        groups.setdefault((int(c["p"]), str(c["psi"])), []).append(dict(c))
    tasks = [(p, psi, grp) for (p, psi), grp in sorted(groups.items())]
    rows = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for out in pool.map(_group_worker, tasks):
                rows.extend(out)
    else:
        for t in tasks:
            rows.extend(_group_worker(t))
    rows.sort(key=ReportRow.sort_key)
    return rows
