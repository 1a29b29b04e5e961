import math
import random
from fractions import Fraction

import pytest

from subgroup_values.errors import (
    MultiplierNotFound,
    PreconditionViolated,
    RankDeficient,
    SearchSpaceTooLarge,
)
from subgroup_values.fields import centered_residue
from subgroup_values.lattices import (
    LatticeBasis,
    SmallResidueInstance,
    build_red_basis,
    find_small_residue_multiplier,
    lattice_volume,
    shortest_vector_enum,
)
from subgroup_values.surd import Surd


def test_lattice_volume_examples():
    assert lattice_volume(LatticeBasis(((2, 0), (0, 2)))) == 4
    assert lattice_volume(LatticeBasis(((3, 4),))) == 5
    assert lattice_volume(LatticeBasis(((15, 4), (33, 0)))) == 132


def test_lattice_volume_rank_deficient():
    with pytest.raises(RankDeficient):
        LatticeBasis(((1, 2), (2, 4)))


def test_shortest_vector_examples():
    v = shortest_vector_enum(LatticeBasis(((2, 0), (0, 2))))
    assert v == (2, 0)
    assert max(abs(x) for x in v) == 2

    v = shortest_vector_enum(LatticeBasis(((1, 0), (0, 1))))
    assert max(abs(x) for x in v) == 1

    v = shortest_vector_enum(LatticeBasis(((15, 4), (33, 0))))
    assert v == (-3, 8)
    assert max(abs(x) for x in v) == 8
    assert 8 <= math.sqrt(132) + 1e-9


def test_shortest_vector_rank_cap():
    cols = tuple(tuple(2 if i == j else 0 for i in range(7)) for j in range(7))
    with pytest.raises(SearchSpaceTooLarge):
        shortest_vector_enum(LatticeBasis(cols))


def test_minkowski_bound_random_bases():
    rng = random.Random(20260810)
    done = 0
    while done < 120:
        r = rng.choice((2, 3, 4))
        cols = tuple(
            tuple(rng.randint(-50, 50) for _ in range(r)) for _ in range(r)
        )
        try:
            B = LatticeBasis(cols)
        except RankDeficient:
            continue
        v = shortest_vector_enum(B)
        norm = max(abs(x) for x in v)
        assert norm**r <= lattice_volume(B)
        done += 1


def test_build_red_basis_worked_example():
    inst = SmallResidueInstance(11, (1, 5), (3, 4))
    B = build_red_basis(inst)
    assert B.cols == ((15, 4), (33, 0))
    assert lattice_volume(B) == 132 == 11 * 12  # p^(s-1) V^(s-1)
    assert B.row_scales == (1, 1)


def test_build_red_basis_volume_matches_closed_form():
    rng = random.Random(5)
    for _ in range(25):
        p = rng.choice((11, 13, 17, 101))
        s = rng.randint(2, 4)
        while True:
            V = [rng.randint(2, p - 1) for _ in range(s)]
            prod = math.prod(V)
            if p ** (s - 1) < prod <= 2 * p ** (s - 1):
                break
        b = [1] + [rng.randrange(p) for _ in range(s - 1)]
        inst = SmallResidueInstance(p, tuple(b), tuple(V))
        B = build_red_basis(inst)
        scale = math.prod(B.row_scales)
        assert lattice_volume(B) == p ** (s - 1) * prod ** (s - 1) * scale


def test_build_red_basis_rational_bounds_are_scaled():
    inst = SmallResidueInstance(11, (1, 5), (Fraction(7, 2), 4))
    B = build_red_basis(inst)
    assert any(sc > 1 for sc in B.row_scales)


def test_find_small_residue_multiplier_worked_example():
    inst = SmallResidueInstance(11, (1, 5), (3, 4))
    v = find_small_residue_multiplier(inst)
    valid = {w for w in range(1, 11) if inst.satisfied_by(w)}
    assert v in valid
    assert centered_residue(v, 11) <= 3 and centered_residue(5 * v, 11) <= 4
    # deterministic
    assert find_small_residue_multiplier(inst) == v


def test_find_small_residue_multiplier_trivial_case():
    inst = SmallResidueInstance(11, (1, 3, 4), (5, 5, 5))
    assert 5**3 > 11**2
    assert inst.satisfied_by(1)  # v = 1 already meets every bound
    v = find_small_residue_multiplier(inst)
    assert inst.satisfied_by(v)
    assert find_small_residue_multiplier(inst) == v


def test_instance_with_full_range_bounds_is_well_formed():
    for p in (3, 11, 101):
        inst = SmallResidueInstance(p, (1, 1), (p - 1, p - 1))
        inst.validate()
        assert inst.satisfied_by(find_small_residue_multiplier(inst))


def test_find_small_residue_multiplier_precondition():
    inst = SmallResidueInstance(11, (1, 5), (3, 3))
    with pytest.raises(PreconditionViolated):
        find_small_residue_multiplier(inst)
    with pytest.raises(PreconditionViolated):
        SmallResidueInstance(11, (1, 5), (12, 4)).validate()
    with pytest.raises(PreconditionViolated):
        SmallResidueInstance(11, (1, 5), (Fraction(1, 2), 11 - 1)).validate()


def test_find_small_residue_multiplier_zero_entries():
    # b entries divisible by p impose no constraint; pivoting handles them
    inst = SmallResidueInstance(13, (0, 1, 5), (5, 5, 12))
    v = find_small_residue_multiplier(inst)
    assert inst.satisfied_by(v)
    inst = SmallResidueInstance(13, (0, 0), (13 - 1, 13 - 1))
    assert find_small_residue_multiplier(inst) == 1


def test_find_small_residue_multiplier_surd_bounds():
    # bounds that are exact cube roots: constraints use their floors
    b = (1, 4, 9)
    V = (Surd(Fraction(80), 2), Surd(Fraction(90), 2), Surd(Fraction(70), 2))
    inst = SmallResidueInstance(11, b, V)
    v = find_small_residue_multiplier(inst)
    assert inst.satisfied_by(v)


def test_soundness_random_instances():
    rng = random.Random(777)
    primes = [11, 13, 101, 997, 1009, 1999, 4999, 10007]
    done = 0
    while done < 120:
        p = rng.choice(primes)
        s = rng.randint(2, 5)
        target = p ** (s - 1)
        V = []
        for _ in range(s - 1):
            V.append(rng.randint(max(2, int(target ** (1 / s) * 0.5)), p - 1))
        rest = target // math.prod(V) + 1
        if not 1 <= rest < p:
            continue
        V.append(min(p - 1, max(1, rest)))
        prod = math.prod(V)
        if not (target < prod <= 2 * target):
            continue
        b = tuple(rng.randrange(p) for _ in range(s))
        inst = SmallResidueInstance(p, b, tuple(V))
        v = find_small_residue_multiplier(inst)
        assert math.gcd(v, p) == 1
        assert inst.satisfied_by(v)
        if p <= 2000:
            scan = [w for w in range(1, p) if inst.satisfied_by(w)]
            assert scan, "independent scan found no valid multiplier"
            assert v in scan
        done += 1


def test_multiplier_never_not_found_on_valid_instances():
    # MultiplierNotFound must never fire when preconditions hold; spot-check
    rng = random.Random(3)
    for _ in range(40):
        p = 101
        s = 3
        while True:
            V = [rng.randint(2, 100) for _ in range(s)]
            if p ** (s - 1) < math.prod(V) <= 2 * p ** (s - 1):
                break
        inst = SmallResidueInstance(p, tuple(rng.randrange(p) for _ in range(s)), tuple(V))
        try:
            v = find_small_residue_multiplier(inst)
        except MultiplierNotFound:
            pytest.fail("construction failed on a valid instance")
        assert inst.satisfied_by(v)
