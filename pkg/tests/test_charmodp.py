import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaincore.charmodp import (
    central_character,
    character_table_modp,
    charpoly,
    choose_prime,
    discrete_log,
    exponent_table,
    multiplicity,
    nullspace,
    root_of_unity,
    rref,
    valid_primes,
)
from chaincore.errors import NonIntegral, NotAPower, NotCentral
from chaincore.fusion import fusion_from_group
from chaincore.groups import center
from conftest import CORPUS, context, group
from oracles import complex_exponent_table, complex_table, fixed_points, galois_match, sign


@pytest.mark.parametrize("spec,p", [("C2", 3), ("S3", 7), ("Q8", 13), ("C5", 11), ("S4", 37), ("A4", 13)])
def test_choose_prime(spec, p):
    assert choose_prime(group(spec)) == p


def test_s3_table_at_seven(s3):
    t = character_table_modp(s3, 7)
    assert t.table == ((1, 1, 1), (1, 6, 1), (2, 0, 6))
    assert t.degrees == (1, 1, 2)
    assert t.zeta == 3  # 3 and 5 have order 6 mod 7
    assert pow(t.zeta, 6, 7) == 1 and all(pow(t.zeta, k, 7) != 1 for k in (1, 2, 3))


def test_discrete_log_examples():
    assert discrete_log(13, 5, 12, 4) == 2
    assert discrete_log(7, 3, 3, 6) == 1
    with pytest.raises(NotAPower):
        discrete_log(13, 5, 2, 4)


def test_root_of_unity_is_smallest():
    for p, e in [(7, 6), (13, 4), (37, 12), (11, 5)]:
        z = root_of_unity(p, e)
        orders = [x for x in range(1, p) if pow(x, e, p) == 1 and all(pow(x, d, p) != 1 for d in range(1, e))]
        assert z == min(orders)


@pytest.mark.parametrize("spec", ["S3", "S4", "S5", "A4", "A5"])
def test_permutation_characters(spec):
    """Fixed points minus one and the sign are characters; check their decompositions."""
    G = group(spec)
    t = context(spec).table if spec in CORPUS else character_table_modp(G)
    reps = [c.representative for c in t.classes]
    n = len(G.perms[0])
    perm_char = [fixed_points(G.perms[g]) % t.p for g in reps]
    sgn = [sign(G.perms[g]) % t.p for g in reps]
    std = [(f - 1) % t.p for f in perm_char]
    # the permutation character is 1 + std, and std is irreducible (2-transitive action)
    assert t.inner(perm_char, perm_char) == 2
    assert t.inner(std, std) == 1
    assert tuple(std) in t.table
    assert multiplicity(t, perm_char, 0) == 1
    if spec.startswith("S"):
        assert tuple(sgn) in t.table
        assert t.inner(sgn, t.table[0]) == 0
        assert t.degrees.count(n - 1) >= 1


@pytest.mark.parametrize("spec", CORPUS + ["A5", "S5"])
def test_matches_complex_oracle(spec):
    """Mod-p table agrees with a floating-point table up to a Galois twist."""
    G = group(spec)
    t = character_table_modp(G)
    rows = complex_table(G)
    assert sorted(t.degrees) == sorted(int(round(r[0].real)) for r in rows)
    match = galois_match(exponent_table(t), complex_exponent_table(G, rows), G.exponent)
    assert match is not None


@pytest.mark.parametrize("spec", CORPUS)
def test_degrees_and_linear_characters(spec):
    G = group(spec)
    t = context(spec).table
    assert sum(d * d for d in t.degrees) == G.order
    assert t.degrees[0] == 1 and t.table[0] == tuple([1] * len(t.classes))
    from chaincore.groups import derived_subgroup

    assert t.degrees.count(1) == G.order // derived_subgroup(G).order
    assert all(G.order % d == 0 for d in t.degrees)


@pytest.mark.parametrize("spec", CORPUS)
def test_orthogonality_and_regular(spec):
    t = context(spec).table
    assert t.row_orthogonality() and t.column_orthogonality()
    reg = t.regular_character()
    assert [multiplicity(t, reg, V) for V in range(t.num_irreps)] == list(t.degrees)


@pytest.mark.parametrize("spec", CORPUS)
def test_prime_independence(spec):
    G = group(spec)
    p1, p2 = valid_primes(G, 2)
    t1, t2 = character_table_modp(G, p1), character_table_modp(G, p2)
    assert t1.degrees == t2.degrees
    match = galois_match(exponent_table(t1), exponent_table(t2), G.exponent)
    assert match is not None
    _, sigma = match
    f1, f2 = fusion_from_group(t1), fusion_from_group(t2)
    for V in range(f1.rank):
        for W in range(f1.rank):
            out2 = f2.N[sigma[V], sigma[W]]
            assert f1.N[V, W] == tuple(out2[sigma[U]] for U in range(f1.rank))


def test_central_characters(q8):
    t = context("Q8").table
    z = [g for g in center(q8).elements if g != q8.identity][0]
    # -1 acts as +1 on the four linear characters and as -1 on the 2-dim irrep
    ks = [central_character(t, V, z) for V in range(5)]
    assert ks == [0, 0, 0, 0, 2]
    i = [g for g in range(8) if q8.element_order(g) == 4][0]
    with pytest.raises(NotCentral):
        central_character(t, 0, i)


def test_multiplicity_rejects_non_characters(s3):
    t = context("S3").table
    with pytest.raises(NonIntegral):
        multiplicity(t, [1, 3, 3], 2)


def test_exponent_table_shape(q8):
    enc = exponent_table(context("Q8").table)
    # 2-dim irrep: identity, three classes of order-4 elements, and -1
    assert enc[4] == [(0, 0), (1, 3), (1, 3), (2, 2), (1, 3)]
    for C3p in (7, 13, 19):
        assert exponent_table(character_table_modp(group("C3"), C3p)) == exponent_table(
            character_table_modp(group("C3"), 7)
        )


def test_rejects_invalid_prime(s3):
    with pytest.raises(ValueError):
        character_table_modp(s3, 5)
    with pytest.raises(ValueError):
        character_table_modp(s3, 11)


# -- GF(p) linear algebra against numpy over the integers ------------------------

P = 31


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(0, P - 1), min_size=4, max_size=4), min_size=1, max_size=5))
def test_nullspace_is_annihilated(rows):
    basis = nullspace(rows, P)
    _, pivots = rref(rows, P)
    assert len(basis) + len(pivots) == 4
    for v in basis:
        assert all(sum(a * b for a, b in zip(r, v)) % P == 0 for r in rows)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=9, max_size=9))
def test_charpoly_matches_numpy(entries):
    a = np.array(entries).reshape(3, 3)
    cp = charpoly((a % P).tolist(), P)
    ref = np.round(np.poly(a)).astype(np.int64)  # monic, highest degree first
    got = list(cp)
    if got[0] != 1:
        got = got[::-1]
    assert [c % P for c in got] == [int(c) % P for c in ref]
