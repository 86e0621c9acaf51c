"""Acceptance criteria.  Each test records one PASS/FAIL line, printed at the end
of the session (and immediately with ``-s``)."""

import math
import time

import pytest

from chaincore.chain import GroupContext, relative_center, verify_caniso, verify_iso_theorem
from chaincore.charmodp import character_table_modp, exponent_table, multiplicity, valid_primes
from chaincore.chain import chain_report_from_fusion
from chaincore.clifford import const_support, embedding_criterion, sim_B_partition, sim_H_partition, verify_partition_duality
from chaincore.fusion import frobenius_reciprocity, fusion_from_group, load_fusion_file, validate
from chaincore.groups import center, full_subgroup, is_normal, subgroup_lattice, trivial_subgroup
from chaincore.presentations import GroupPresentation, Status, abelianization, smith_normal_form, todd_coxeter
from chaincore.specs import parse_group_spec, parse_subgroup_spec
from conftest import CORPUS
from oracles import galois_match

RESULTS: list[str] = []


def record(n: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {n}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


@pytest.fixture(scope="module")
def sweep():
    """Fresh single-threaded sweep over the default corpus, timed end to end."""
    start = time.perf_counter()
    data = []
    for spec in CORPUS:
        G = parse_group_spec(spec)
        ctx = GroupContext(G)
        lattice = subgroup_lattice(G)
        reports = [(H, verify_caniso(G, H, context=ctx)) for H in lattice]
        data.append((spec, G, ctx, lattice, reports))
    return data, time.perf_counter() - start


def test_criterion_1_theorem_sweep(sweep):
    data, elapsed = sweep
    total = ok = 0
    bad = []
    for spec, G, ctx, lattice, reports in data:
        for H, r in reports:
            total += 1
            Z = relative_center(G, H)
            exact = (
                r.status is Status.PASS
                and r.chain_invariants.torsion == r.target.invariant_factors
                and r.tc_order == Z.order
                and r.verdicts["well-defined"].passed
                and r.verdicts["surjective"].passed
            )
            ok += exact
            if not exact:
                bad.append(f"{spec}:{H.order}")
    record(1, ok == total and elapsed < 60, f"{ok}/{total} subgroups PASS in {elapsed:.2f} s (< 60 s) {bad[:5] or ''}".rstrip())


def test_criterion_2_specializations(sweep):
    data, _ = sweep
    fails = []
    for spec, G, ctx, _, _ in data:
        full = verify_caniso(G, full_subgroup(G), context=ctx)
        if not (full.passed and full.target.invariant_factors == full.chain_invariants.torsion
                and full.tc_order == center(G).order):
            fails.append(f"{spec} H=G")
        triv = verify_caniso(G, trivial_subgroup(G), context=ctx)
        if not (triv.passed and triv.chain_invariants.torsion == () and triv.tc_order == 1):
            fails.append(f"{spec} H=1")
    record(2, not fails, f"H=G and H=1 on {len(data)} groups {fails or ''}".rstrip())


def test_criterion_3_clifford_duality(sweep):
    data, _ = sweep
    normal = passed = pairs = agree = 0
    for spec, G, ctx, lattice, _ in data:
        for H in lattice:
            if not is_normal(G, H):
                continue
            normal += 1
            b = ctx.branching(H)
            passed += verify_partition_duality(b, ctx.fusion).passed
            for V in range(b.big.rank):
                for W in range(b.big.rank):
                    pairs += 1
                    agree += embedding_criterion(b, ctx.fusion, V, W) == (
                        const_support(b, V) == const_support(b, W)
                    )
    S3 = parse_group_spec("S3")
    b = GroupContext(S3).branching(parse_subgroup_spec(S3, "gen:[c]"))
    oracle = sim_H_partition(b) == [[0, 1], [2]] and sim_B_partition(b) == [[0], [1, 2]]
    record(
        3,
        passed == normal and agree == pairs and oracle,
        f"{passed}/{normal} normal subgroups, embedding criterion {agree}/{pairs} pairs, S3>A3 oracle {oracle}",
    )


def test_criterion_4_negative_control():
    S3 = parse_group_spec("S3")
    H = parse_subgroup_spec(S3, "gen:[(0 1)]")
    b = GroupContext(S3).branching(H)
    rep = verify_partition_duality(b, GroupContext(S3).fusion)
    failed = [k for k, v in rep.checks.items() if not v]
    record(4, not is_normal(S3, H) and bool(failed), f"<(0 1)> <= S3 reports failing checks {failed}")


def test_criterion_5_character_tables(sweep):
    data, _ = sweep
    fails = []
    for spec, G, ctx, _, _ in data:
        t = ctx.table
        if not (t.row_orthogonality() and t.column_orthogonality()):
            fails.append(f"{spec} orthogonality")
        if sum(d * d for d in t.degrees) != G.order:
            fails.append(f"{spec} degrees")
        reg = t.regular_character()
        if [multiplicity(t, reg, V) for V in range(t.num_irreps)] != list(t.degrees):
            fails.append(f"{spec} regular")
        p2 = valid_primes(G, 2)[1]
        t2 = character_table_modp(G, p2)
        match = galois_match(exponent_table(t), exponent_table(t2), G.exponent)
        if t2.degrees != t.degrees or match is None:
            fails.append(f"{spec} prime independence")
            continue
        _, sigma = match
        f1, f2 = ctx.fusion, fusion_from_group(t2)
        r = f1.rank
        if any(
            f1.N[V, W] != tuple(f2.N[sigma[V], sigma[W]][sigma[U]] for U in range(r))
            for V in range(r)
            for W in range(r)
        ):
            fails.append(f"{spec} fusion under second prime")
    record(5, not fails, f"{len(data)} groups: orthogonality, sum d^2, regular, second prime {fails or ''}".rstrip())


def test_criterion_6_fusion_axioms(sweep):
    data, _ = sweep
    fails, pairs = [], 0
    for spec, G, ctx, lattice, _ in data:
        if not validate(ctx.fusion).ok:
            fails.append(f"{spec} axioms")
        for H in lattice:
            pairs += 1
            if not frobenius_reciprocity(ctx.branching(H)):
                fails.append(f"{spec}:{H.order} Frobenius")
    record(6, not fails, f"{len(data)} fusion rings valid, Frobenius on {pairs} pairs {fails or ''}".rstrip())


def test_criterion_7_kac_paljutkin():
    start = time.perf_counter()
    ff = load_fusion_file("kac_paljutkin.fusion.json")
    r = chain_report_from_fusion(ff)
    elapsed = time.perf_counter() - start
    ok = (
        list(r.chain_invariants.torsion) == [2] == ff.expected_chain_group
        and r.tc_order == 2
        and r.passed
        and elapsed < 1.0
    )
    record(7, ok, f"invariants {list(r.chain_invariants.torsion)}, TC order {r.tc_order}, {elapsed * 1000:.0f} ms (< 1 s)")


def test_criterion_8_iso_theorem(sweep):
    data, _ = sweep
    total = ok = 0
    for spec, G, _, lattice, _ in data:
        for H in lattice:
            total += 1
            ok += verify_iso_theorem(G, H).passed
    record(8, ok == total, f"{ok}/{total} pairs")


def test_criterion_9_presentation_oracles(sweep):
    data, _ = sweep
    snf = smith_normal_form([[2, 0], [0, 3]])[0]
    tc = todd_coxeter(GroupPresentation(2, ((1, 1), (2, 2), (1, 2, 1, 2, 1, 2)))).order
    total = divides = 0
    for _, _, _, _, reports in data:
        for _, r in reports:
            total += 1
            ab = abelianization(r.presentation)
            divides += r.tc_order is not None and ab.is_finite and r.tc_order % ab.order == 0
    record(
        9,
        snf == [1, 6] and tc == 6 and divides == total,
        f"SNF {snf}, TC order {tc}, |C^ab| divides |C| on {divides}/{total} presentations",
    )
