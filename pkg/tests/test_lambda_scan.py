import random

import pytest

from subgroup_values.errors import DegreeTooSmall, PerfectPowerInput, ZeroLambda
from subgroup_values.factorization import embed_bipoly
from subgroup_values.fields import FieldCtx
from subgroup_values.lambda_scan import build_sym_poly, exceptional_lambdas
from subgroup_values.polynomials import BiPoly, UniPoly, rational_normalize

F5 = FieldCtx(5)
F7 = FieldCtx(7)


def P(ctx, *ints):
    return UniPoly.from_ints(ctx, ints)


def R(ctx, num_ints, den_ints=(1,)):
    return rational_normalize(UniPoly.from_ints(ctx, num_ints), UniPoly.from_ints(ctx, den_ints))


def test_build_sym_poly_examples():
    psi = R(F7, [0, 0, 1])  # X^2
    assert build_sym_poly(psi, 3) == BiPoly(F7, {(2, 0): 1, (0, 2): -3})

    psi = R(F7, [0, 1, 1])  # X^2 + X
    assert build_sym_poly(psi, 1) == BiPoly(F7, {(2, 0): 1, (1, 0): 1, (0, 2): -1, (0, 1): -1})

    psi = R(F7, [0, 1], [1, 1])  # X/(X+1)
    assert build_sym_poly(psi, 2) == BiPoly(F7, {(1, 1): 6, (1, 0): 1, (0, 1): 5})

    with pytest.raises(ZeroLambda):
        build_sym_poly(psi, 0)


def test_sym_poly_evaluates_to_cross_difference():
    rng = random.Random(5)
    for _ in range(20):
        psi = R(F7, [rng.randrange(7) for _ in range(3)], [rng.randrange(7) for _ in range(2)])
        if psi.is_constant() or psi.num.is_zero():
            continue
        lam = rng.randrange(1, 7)
        F = build_sym_poly(psi, lam)
        for x in range(7):
            for y in range(7):
                fx = psi.num.eval_raw(x)
                gx = psi.den.eval_raw(x)
                fy = psi.num.eval_raw(y)
                gy = psi.den.eval_raw(y)
                assert F.eval_raw(x, y) == (fx * gy - lam * fy * gx) % 7


def test_exceptional_lambdas_quadratic_over_f7():
    psi = R(F7, [0, 1, 1])  # X^2 + X
    report = exceptional_lambdas(psi, 7)
    vals = sorted(int(w.lam) for w in report.exceptional)
    assert vals == [1]
    assert report.bound == 16
    # the degeneracy oracle: λ(1-λ)/4 vanishes only at λ = 1 among nonzero λ
    degenerate = [lam for lam in range(1, 7) if lam * (1 - lam) % 7 == 0]
    assert degenerate == [1]
    # the λ = 1 witness splits the polynomial as (X - Y)(X + Y + 1) up to order
    w = report.exceptional[0]
    sym = build_sym_poly(psi, 1)
    sym_w = sym if w.witness.ctx == F7 else embed_bipoly(sym, w.witness.ctx)
    assert sym_w.try_divide(w.witness) is not None


def test_exceptional_lambdas_x2_plus_1_over_f5():
    psi = R(F5, [1, 0, 1])  # X^2 + 1 = (X-2)(X-3), not a perfect power
    report = exceptional_lambdas(psi, 5)
    vals = sorted(int(w.lam) for w in report.exceptional)
    assert vals == [1]
    # determinant oracle -λ(1-λ) over F_5
    degenerate = [lam for lam in range(1, 5) if -lam * (1 - lam) % 5 == 0]
    assert degenerate == [1]


def test_exceptional_lambdas_rejects_perfect_power():
    psi = R(F7, [0, 0, 0, 1])  # X^3
    with pytest.raises(PerfectPowerInput):
        exceptional_lambdas(psi, 7)


def test_exceptional_lambdas_rejects_degree_one():
    psi = R(F7, [1, 1])
    with pytest.raises(DegreeTooSmall):
        exceptional_lambdas(psi, 7)


def test_lambda_one_is_always_exceptional():
    # f(X)g(Y) - f(Y)g(X) vanishes on the diagonal, so X - Y divides it
    rng = random.Random(17)
    for _ in range(10):
        num = [rng.randrange(7) for _ in range(rng.randint(3, 4))]
        den = [rng.randrange(7) for _ in range(rng.randint(1, 2))]
        try:
            psi = R(F7, num, den)
        except Exception:
            continue
        if not isinstance(psi.D, int) or psi.D < 2:
            continue
        try:
            report = exceptional_lambdas(psi, 7)
        except PerfectPowerInput:
            continue
        assert 1 in {int(w.lam) for w in report.exceptional}


def test_scale_robustness():
    rng = random.Random(23)
    done = 0
    while done < 50:
        num = [rng.randrange(7) for _ in range(rng.randint(3, 4))]
        den = [rng.randrange(7) for _ in range(rng.randint(1, 2))]
        c = rng.randrange(2, 7)
        try:
            psi = R(F7, num, den)
        except Exception:
            continue
        if not isinstance(psi.D, int) or psi.D < 2:
            continue
        try:
            base = exceptional_lambdas(psi, 7)
            scaled = exceptional_lambdas(psi.scale(c), 7)
        except PerfectPowerInput:
            continue
        assert {int(w.lam) for w in base.exceptional} == {int(w.lam) for w in scaled.exceptional}
        done += 1


def test_extension_scan_finds_no_new_lambdas_for_x2_plus_1():
    psi = R(F5, [1, 0, 1])
    report = exceptional_lambdas(psi, 5, max_ext=2)
    assert report.count == 1
    assert int(report.exceptional[0].lam) == 1
    assert report.scanned_field.t == 2


def test_quadratic_polynomial_scan_matches_conic_classifier():
    # for psi = a x^2 + b x + c with b^2 != 4ac, the symmetrized polynomial is
    # a conic in (X, Y) whose degeneracy determinant is
    # lambda (1 - lambda) a (b^2 - 4ac) / 4, so the exceptional set is exactly {1}
    rng = random.Random(101)
    for p in (7, 11, 13):
        ctx = FieldCtx(p)
        done = 0
        while done < 12:
            a = rng.randrange(1, p)
            b = rng.randrange(p)
            c = rng.randrange(p)
            if (b * b - 4 * a * c) % p == 0:
                continue
            psi = R(ctx, [c, b, a])
            report = exceptional_lambdas(psi, p)
            assert sorted(int(w.lam) for w in report.exceptional) == [1], (p, a, b, c)
            done += 1


def test_exceptional_count_cap_small_corpus():
    rng = random.Random(42)
    done = 0
    while done < 25:
        d = rng.randint(2, 3)
        num = [rng.randrange(7) for _ in range(d + 1)]
        den = [rng.randrange(7) for _ in range(rng.randint(1, d))]
        try:
            psi = R(F7, num, den)
        except Exception:
            continue
        if not isinstance(psi.D, int) or psi.D < 2 or psi.num.degree + psi.den.degree >= 7:
            continue
        try:
            report = exceptional_lambdas(psi, 7)
        except PerfectPowerInput:
            continue
        assert report.count <= 4 * psi.D**2
        done += 1
