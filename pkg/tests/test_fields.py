import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from subgroup_values.errors import (
    CtxMismatch,
    DegreeTooLarge,
    NonInvertible,
    NotPrime,
    ZeroInverse,
)
from subgroup_values.fields import (
    FieldCtx,
    centered_residue,
    ext_field_build,
    is_prime,
    mod_inverse,
    signed_residue,
)


def test_mod_inverse_examples():
    assert mod_inverse(3, 7) == 5
    assert mod_inverse(1, 5) == 1
    assert mod_inverse(1, 101) == 1
    assert mod_inverse(2, 11) == 6


def test_mod_inverse_noninvertible():
    with pytest.raises(NonInvertible):
        mod_inverse(0, 7)
    with pytest.raises(NonInvertible):
        mod_inverse(14, 7)


def test_centered_residue_examples():
    assert centered_residue(10, 7) == 3
    assert centered_residue(4, 7) == 3
    assert centered_residue(7, 7) == 0


@given(a=st.integers(-(10**9), 10**9), p=st.sampled_from([2, 3, 5, 7, 11, 101, 10007]))
def test_centered_residue_properties(a, p):
    r = centered_residue(a, p)
    assert 0 <= r <= p / 2
    assert (a - r) % p == 0 or (a + r) % p == 0


@given(a=st.integers(-(10**6), 10**6), p=st.sampled_from([3, 5, 7, 13, 101]))
def test_signed_residue_matches_centered(a, p):
    s = signed_residue(a, p)
    assert -(p - 1) // 2 <= s <= p // 2
    assert (s - a) % p == 0
    assert abs(s) == centered_residue(a, p)


def test_is_prime_small():
    primes = {2, 3, 5, 7, 11, 13, 10007, 4294967291}
    for n in primes:
        assert is_prime(n)
    for n in (0, 1, 4, 6, 9, 10006, 2**31 - 2):
        assert not is_prime(n)


def test_ext_field_build_examples():
    f4 = ext_field_build(2, 2)
    assert f4.modulus == (1, 1, 1)  # X^2 + X + 1

    f25 = ext_field_build(5, 2)
    assert f25.modulus == (2, 0, 1)  # X^2 + 2

    f3 = ext_field_build(3, 1)
    assert f3.modulus is None and f3.t == 1


def test_ext_field_build_picks_first_irreducible_over_f5():
    # independent oracle: walk candidates in (c1, c0) order checking for roots
    for c1 in range(5):
        for c0 in range(5):
            has_root = any((x * x + c1 * x + c0) % 5 == 0 for x in range(5))
            if not has_root:
                assert ext_field_build(5, 2).modulus == (c0, c1, 1)
                return
    raise AssertionError("no irreducible quadratic over F_5?")


def test_ext_field_build_errors():
    with pytest.raises(NotPrime):
        ext_field_build(6, 2)
    with pytest.raises(DegreeTooLarge):
        ext_field_build(5, 13)


def test_ext_field_build_deterministic():
    a = ext_field_build(7, 3)
    b = ext_field_build(7, 3)
    assert a == b and a.modulus == b.modulus


def test_f4_multiplication():
    f4 = ext_field_build(2, 2)
    x = f4.el((0, 1))
    assert (x * x).coeffs == (1, 1)  # x^2 = x + 1
    assert f4.one.inverse() == f4.one


def test_fermat_in_f7():
    f7 = FieldCtx(7)
    assert (f7.el(3) ** 6) == f7.one


@given(p=st.sampled_from([3, 5, 7]), t=st.sampled_from([1, 2, 3]), n=st.integers(0, 342))
@settings(max_examples=60, deadline=None)
def test_inverse_and_order_properties(p, t, n):
    ctx = ext_field_build(p, t)
    n %= ctx.q
    raw = ctx.from_int(0)
    for i, e in enumerate(ctx.elements()):
        if i == n:
            raw = e
            break
    a = ctx.el(raw) if t > 1 else ctx.el(n % p)
    if a.is_zero():
        with pytest.raises(ZeroInverse):
            a.inverse()
    else:
        assert a * a.inverse() == ctx.one
        assert a ** (ctx.q - 1) == ctx.one


def test_ctx_mismatch():
    a = FieldCtx(5).el(2)
    b = FieldCtx(7).el(2)
    with pytest.raises(CtxMismatch):
        _ = a + b


def test_elements_order_is_ascending_key():
    ctx = ext_field_build(3, 2)
    els = list(ctx.elements())
    keys = [ctx.raw_key(e) for e in els]
    assert keys == sorted(keys) == list(range(9))
