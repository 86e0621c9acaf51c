import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from chaincore.errors import Exhausted
from chaincore.presentations import (
    FiniteAbelianGroup,
    GroupPresentation,
    Status,
    abelianization,
    certify_abelian_iso,
    free_reduce,
    int_det,
    matmul,
    row_span_contains,
    smith_normal_form,
    smith_transforms,
    todd_coxeter,
)


def pres(n, *rels):
    return GroupPresentation(n, tuple(tuple(r) for r in rels))


S3 = pres(2, [1, 1], [2, 2], [1, 2] * 3)
Q8 = pres(2, [1] * 4, [1, 1, -2, -2], [-2, 1, 2, 1])
A5 = pres(2, [1, 1], [2, 2, 2], [1, 2] * 5)
PSL27 = pres(2, [1, 1], [2, 2, 2], [1, 2] * 7, [1, -2, 1, 2] * 4)


def test_free_reduce():
    assert free_reduce([1, -1, 2]) == (2,)
    assert free_reduce([1, 2, -2, -1]) == ()
    assert free_reduce([-3, 3, 3]) == (3,)


def test_snf_oracle():
    d, U, V = smith_normal_form([[2, 0], [0, 3]])
    assert d == [1, 6]
    assert matmul(matmul(U, [[2, 0], [0, 3]]), V) == [[1, 0], [0, 6]]


@pytest.mark.parametrize(
    "p,order",
    [(S3, 6), (Q8, 8), (A5, 60), (PSL27, 168), (pres(1, [1] * 7), 7), (pres(2, [1, 1], [2, 2], [1, 2, -1, -2]), 4)],
)
def test_todd_coxeter_orders(p, order):
    assert todd_coxeter(p).order == order


def test_todd_coxeter_exhausts_on_infinite():
    with pytest.raises(Exhausted):
        todd_coxeter(pres(1), limit=100)
    with pytest.raises(Exhausted):
        todd_coxeter(pres(2, [1, 2, -1, -2]), limit=200)


def test_abelianization():
    assert abelianization(S3).torsion == (2,)
    assert abelianization(Q8).torsion == (2, 2)
    assert abelianization(A5).order == 1
    free = abelianization(pres(2, [1, 1]))
    assert free.free_rank == 1 and not free.is_finite


def test_certify():
    z6 = pres(2, [1, 1], [2, 2, 2], [1, 2, -1, -2])
    assert certify_abelian_iso(z6, FiniteAbelianGroup((6,))).status is Status.PASS
    assert certify_abelian_iso(z6, FiniteAbelianGroup((3,))).status is Status.FAIL
    with pytest.raises(ValueError):
        FiniteAbelianGroup((2, 3))
    # abelianization of S3 is C2, but S3 has order 6: not abelian
    v = certify_abelian_iso(S3, FiniteAbelianGroup((2,)))
    assert v.status is Status.FAIL and v.tc_order == 6
    assert certify_abelian_iso(pres(1), FiniteAbelianGroup(()), limit=50).status is Status.INCONCLUSIVE


def test_from_cyclic_orders():
    assert FiniteAbelianGroup.from_cyclic_orders([2, 3]).invariant_factors == (6,)
    assert FiniteAbelianGroup.from_cyclic_orders([4, 2, 6]).invariant_factors == (2, 2, 12)
    assert FiniteAbelianGroup.from_cyclic_orders([1, 1]).order == 1


def test_row_span():
    M = [[2, 0], [0, 3]]
    assert row_span_contains(M, [4, 3])
    assert not row_span_contains(M, [1, 0])
    assert row_span_contains([], [0, 0])


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def _minors_gcd(M, k):
    g = 0
    rows, cols = len(M), len(M[0])
    for rs in itertools.combinations(range(rows), k):
        for cs in itertools.combinations(range(cols), k):
            g = math.gcd(g, int_det([[M[i][j] for j in cs] for i in rs]))
    return g


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(M):
    A, U, V, Vinv = smith_transforms(M)
    assert matmul(matmul(U, M), V) == A
    assert abs(int_det(U)) == 1 and abs(int_det(V)) == 1
    n = len(V)
    assert matmul(V, Vinv) == [[int(i == j) for j in range(n)] for i in range(n)]
    d, _, _ = smith_normal_form(M)
    diag = [x for x in d if x]
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))
    # determinantal divisors: d1*...*dk = gcd of k x k minors
    for k in range(1, len(diag) + 1):
        assert math.prod(diag[:k]) == _minors_gcd(M, k)


@settings(max_examples=60, deadline=None)
@given(matrices, st.randoms())
def test_snf_row_permutation_invariant(M, rnd):
    rows = list(M)
    rnd.shuffle(rows)
    assert smith_normal_form(M)[0] == smith_normal_form(rows)[0]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=3))
def test_tc_on_abelian_presentations(orders):
    """Direct product of cyclic groups: TC order and abelianization agree."""
    n = len(orders)
    rels = [[i + 1] * d for i, d in enumerate(orders)]
    rels += [[i + 1, j + 1, -(i + 1), -(j + 1)] for i in range(n) for j in range(i + 1, n)]
    p = pres(n, *rels)
    tc = todd_coxeter(p).order
    assert tc == math.prod(orders)
    assert abelianization(p).order == tc
    assert certify_abelian_iso(p, FiniteAbelianGroup.from_cyclic_orders(orders)).passed
