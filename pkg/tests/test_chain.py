import math
from itertools import product

import numpy as np
import pytest

from chaincore.chain import (
    GroupContext,
    abelian_basis,
    canonical_map,
    chain_presentation,
    chain_relations,
    chain_report_from_fusion,
    dual_group,
    relative_center,
    verify_caniso,
    verify_chain_functoriality,
    verify_iso_theorem,
)
from chaincore.charmodp import valid_primes
from chaincore.errors import NonCommutativeFusion, NotAbelian
from chaincore.fusion import load_fusion_file
from chaincore.groups import center, full_subgroup, subgroup_generated, trivial_subgroup
from chaincore.presentations import Status, abelianization
from chaincore.specs import parse_subgroup_spec
from conftest import CORPUS, context, group, lattice
from oracles import grading_count, hom_count_abelian


def nondisjoint_triples(b):
    """Triples (U, V, W) with Res U and Res V (x) Res W sharing a constituent, via numpy."""
    B = np.array(b.B, dtype=np.int64)
    r, s = B.shape
    N = np.zeros((s, s, s), dtype=np.int64)
    for (x, y), out in b.small.N.items():
        N[x, y] = out
    out = set()
    for V in range(r):
        for W in range(r):
            prod = np.einsum("x,y,xyz->z", B[V], B[W], N)
            for U in range(r):
                if np.any((B[U] > 0) & (prod > 0)):
                    out.add((U, V, W))
    return out


def graded_maps(r, triples, m):
    return sum(
        1
        for f in product(range(m), repeat=r)
        if all(f[U] == (f[V] + f[W]) % m for U, V, W in triples)
    )


def test_relations_match_numpy_oracle():
    for spec in ["S3", "Q8", "D4", "A4"]:
        for H in lattice(spec):
            b = context(spec).branching(H)
            assert set(chain_relations(b)) == nondisjoint_triples(b)


@pytest.mark.parametrize("spec", ["C4", "C6", "S3", "Q8", "D4", "C2xC2", "A4", "D5"])
def test_hom_counting_oracle(spec):
    """|Hom(C(G,H), Z/m)| counted directly equals |Hom(Z(G) & H, Z/m)|."""
    G, ctx = group(spec), context(spec)
    for H in lattice(spec):
        b = ctx.branching(H)
        triples = nondisjoint_triples(b)
        target = dual_group(relative_center(G, H)).invariant_factors
        for m in (2, 3, 4):
            if m ** b.big.rank > 5000:
                continue
            assert graded_maps(b.big.rank, triples, m) == hom_count_abelian(target, m)


def test_dual_group_values():
    assert dual_group(full_subgroup(group("C2xC4"))).invariant_factors == (2, 4)
    assert dual_group(full_subgroup(group("C12"))).invariant_factors == (12,)
    assert dual_group(center(group("Q8"))).invariant_factors == (2,)
    assert dual_group(trivial_subgroup(group("S4"))).invariant_factors == ()
    with pytest.raises(NotAbelian):
        dual_group(full_subgroup(group("S3")))


@pytest.mark.parametrize("spec", ["C2xC4", "C12", "C2xC2", "C6", "C8"])
def test_abelian_basis(spec):
    G = group(spec)
    basis = abelian_basis(full_subgroup(G))
    orders = [d for _, d in basis]
    assert orders == list(dual_group(full_subgroup(G)).invariant_factors)
    assert all(G.element_order(z) == d for z, d in basis)
    assert math.prod(orders) == G.order


@pytest.mark.parametrize(
    "spec,sub,expected",
    [("Q8", "gen:[i]", (2,)), ("Q8", "full", (2,)), ("S3", "full", ()), ("C6", "full", (6,)),
     ("D4", "center", (2,)), ("SL23", "full", (2,)), ("C2xC4", "full", (2, 4)), ("S3", "trivial", ())],
)
def test_caniso_examples(spec, sub, expected):
    G = group(spec)
    r = verify_caniso(G, parse_subgroup_spec(G, sub), context=context(spec))
    assert r.passed, r.verdicts
    assert r.chain_invariants.torsion == expected
    assert r.target.invariant_factors == expected
    assert r.tc_order == math.prod(expected)


def test_canonical_map_q8(q8):
    ctx = context("Q8")
    cc = canonical_map(ctx.fusion and ctx.branching(full_subgroup(q8)), ctx.table, center(q8))
    assert cc.orders == (2,)
    assert cc.images == [(0,), (0,), (0,), (0,), (1,)]


def test_caniso_is_prime_independent():
    for spec in ["S3", "Q8", "D4", "C2xC4", "SL23"]:
        G = group(spec)
        p2 = valid_primes(G, 2)[1]
        ctx2 = GroupContext(G, p2)
        for H in lattice(spec):
            a = verify_caniso(G, H, context=context(spec))
            b = verify_caniso(G, H, context=ctx2)
            assert a.chain_invariants == b.chain_invariants and a.tc_order == b.tc_order
            assert b.passed


def test_iso_theorem(s3, q8):
    for G, spec in [(s3, "S3"), (q8, "Q8")]:
        for H in lattice(spec):
            assert verify_iso_theorem(G, H).passed


def test_functoriality_direction(q8):
    K, H = trivial_subgroup(q8), center(q8)
    f = verify_chain_functoriality(q8, K, H, context=context("Q8"))
    assert f.large_to_small and not f.small_to_large
    assert f.relations_monotone
    assert f.verdict().status is Status.PASS
    with pytest.raises(ValueError):
        verify_chain_functoriality(q8, H, K)


@pytest.mark.parametrize("spec", ["S3", "D4", "A4", "S4"])
def test_functoriality_on_chains(spec):
    G = group(spec)
    L = lattice(spec)
    for H in L:
        for K in L:
            if K.element_set < H.element_set:
                f = verify_chain_functoriality(G, K, H, context=context(spec))
                assert f.relations_monotone and f.large_to_small


def test_fusion_file_reports():
    kp = chain_report_from_fusion(load_fusion_file("kac_paljutkin.fusion.json"))
    assert kp.chain_invariants.torsion == (2,) and kp.tc_order == 2 and kp.passed
    c2 = chain_report_from_fusion(load_fusion_file("c2.fusion.json"))
    assert c2.chain_invariants.torsion == (2,) and c2.passed
    ff = load_fusion_file("vec_s3.fusion.json", allow_noncommutative=True)
    with pytest.raises(NonCommutativeFusion):
        chain_presentation(ff.pair)
    r = chain_report_from_fusion(ff, allow_noncommutative=True)
    assert r.chain_invariants.torsion == (2,) and r.tc_order == 6


def test_kac_paljutkin_grading_oracle():
    f = load_fusion_file("kac_paljutkin.fusion.json").fusion
    for m in (2, 3, 4, 6):
        assert grading_count(f, m) == hom_count_abelian((2,), m)


@pytest.mark.parametrize("spec", CORPUS)
def test_abelianization_divides_tc(spec):
    ctx = context(spec)
    for H in lattice(spec):
        r = verify_caniso(group(spec), H, context=ctx)
        assert r.tc_order % abelianization(r.presentation).order == 0
