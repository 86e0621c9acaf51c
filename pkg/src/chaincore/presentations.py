"""Finitely presented groups: Smith normal form, abelianization, Todd-Coxeter.

Words are sequences of signed 1-based generator indices: ``[1, -2]`` is
``g1 g2^-1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import Exhausted

Word = tuple[int, ...]
Matrix = list[list[int]]

DEFAULT_LIMIT = 100_000


def free_reduce(word: Sequence[int]) -> Word:
    out: list[int] = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class GroupPresentation:
    ngens: int
    relations: tuple[Word, ...] = ()

    def __post_init__(self):
        rels = tuple(free_reduce(r) for r in self.relations)
        for r in rels:
            if any(x == 0 or abs(x) > self.ngens for x in r):
                raise ValueError(f"relation {r} uses a generator outside 1..{self.ngens}")
        object.__setattr__(self, "relations", rels)

    def exponent_vector(self, word: Sequence[int]) -> list[int]:
        vec = [0] * self.ngens
        for x in word:
            vec[abs(x) - 1] += 1 if x > 0 else -1
        return vec

    def relation_matrix(self) -> Matrix:
        return [self.exponent_vector(r) for r in self.relations]


@dataclass(frozen=True)
class FiniteAbelianGroup:
    invariant_factors: tuple[int, ...] = ()

    def __post_init__(self):
        d = tuple(int(x) for x in self.invariant_factors)
        if any(x < 2 for x in d):
            raise ValueError("invariant factors must be at least 2")
        if any(b % a for a, b in zip(d, d[1:])):
            raise ValueError(f"{list(d)} is not a divisibility chain")
        object.__setattr__(self, "invariant_factors", d)

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @classmethod
    def from_cyclic_orders(cls, orders: Sequence[int]) -> "FiniteAbelianGroup":
        """Normalize a product of cyclic groups into invariant-factor form."""
        diag, _, _ = smith_normal_form([[n if i == j else 0 for j in range(len(orders))]
                                        for i, n in enumerate(orders)])
        return cls(tuple(d for d in diag if d > 1))

    def __str__(self) -> str:
        if not self.invariant_factors:
            return "trivial"
        return " x ".join(f"C{d}" for d in self.invariant_factors)


@dataclass(frozen=True)
class Abelianization:
    torsion: tuple[int, ...]
    free_rank: int

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def order(self) -> int | None:
        return math.prod(self.torsion) if self.is_finite else None

    def as_finite(self) -> FiniteAbelianGroup:
        if not self.is_finite:
            raise ValueError("abelianization is infinite")
        return FiniteAbelianGroup(self.torsion)

    def __str__(self) -> str:
        parts = [f"C{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) or "trivial"


# -- Smith normal form -----------------------------------------------------------


def _identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_transforms(M: Sequence[Sequence[int]]):
    """Return (A, U, V, Vinv) with A = U M V diagonal, divisibility chain, A[i][i] >= 0."""
    A = [list(map(int, row)) for row in M]
    m = len(A)
    n = len(A[0]) if m else 0
    U, V, Vinv = _identity(m), _identity(n), _identity(n)

    def row_add(dst: int, src: int, q: int) -> None:  # row_dst -= q row_src
        if q:
            A[dst] = [a - q * b for a, b in zip(A[dst], A[src])]
            U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def col_add(dst: int, src: int, q: int) -> None:  # col_dst -= q col_src
        if q:
            for row in A:
                row[dst] -= q * row[src]
            for row in V:
                row[dst] -= q * row[src]
            Vinv[src] = [a + q * b for a, b in zip(Vinv[src], Vinv[dst])]

    def row_swap(i: int, j: int) -> None:
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]

    def col_swap(i: int, j: int) -> None:
        if i != j:
            for row in A:
                row[i], row[j] = row[j], row[i]
            for row in V:
                row[i], row[j] = row[j], row[i]
            Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    for t in range(min(m, n)):
        entries = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        row_swap(t, i)
        col_swap(t, j)
        while True:
            # clear column t, moving a smaller remainder into the pivot when one appears
            for i in range(t + 1, m):
                row_add(i, t, A[i][t] // A[t][t])
            rest = [(abs(A[i][t]), i) for i in range(t + 1, m) if A[i][t]]
            if rest:
                row_swap(t, min(rest)[1])
                continue
            for j in range(t + 1, n):
                col_add(j, t, A[t][j] // A[t][t])
            rest = [(abs(A[t][j]), j) for j in range(t + 1, n) if A[t][j]]
            if rest:
                col_swap(t, min(rest)[1])
                continue
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            row_add(t, bad, -1)
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
    return A, U, V, Vinv


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[list[int], Matrix, Matrix]:
    """Diagonal ``D`` and unimodular ``U``, ``V`` with ``U M V = diag(D)``.

    ``D`` has ``min(rows, cols)`` entries, nonnegative, each dividing the next
    (zeros last).
    """
    A, U, V, _ = smith_transforms(M)
    k = min(len(A), len(A[0]) if A else 0)
    return [A[i][i] for i in range(k)], U, V


def matmul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def int_det(M: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant (fraction-free Bareiss)."""
    A = [list(map(int, row)) for row in M]
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k]), None)
            if swap is None:
                return 0
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def row_span_checker(M: Sequence[Sequence[int]]):
    """Membership test for the integer row span of ``M``, factoring M once."""
    rows = sorted({tuple(r) for r in M if any(r)})
    if not rows:
        return lambda vec: not any(vec)
    A, _, V, _ = smith_transforms(rows)
    diag = [A[j][j] if j < len(A) else 0 for j in range(len(V))]

    def contains(vec: Sequence[int]) -> bool:
        for j, d in enumerate(diag):
            x = sum(v * V[i][j] for i, v in enumerate(vec))
            if (d == 0 and x) or (d and x % d):
                return False
        return True

    return contains


def row_span_contains(M: Sequence[Sequence[int]], vec: Sequence[int]) -> bool:
    """Is ``vec`` an integer combination of the rows of ``M``?"""
    return row_span_checker(M)(vec)


def abelianization(p: GroupPresentation) -> Abelianization:
    rows = {tuple(v) for v in p.relation_matrix() if any(v)}
    if not rows or p.ngens == 0:
        return Abelianization((), p.ngens)
    diag, _, _ = smith_normal_form(sorted(rows))
    rank = sum(1 for d in diag if d)
    return Abelianization(tuple(d for d in diag if d > 1), p.ngens - rank)


# -- Todd-Coxeter ----------------------------------------------------------------


@dataclass
class CosetEnumeration:
    order: int
    action: list[list[int]]  # action[i][c] = coset c * g_(i+1)
    defined: int

    def commute(self) -> bool:
        for a in self.action:
            for b in self.action:
                if any(b[a[c]] != a[b[c]] for c in range(self.order)):
                    return False
        return True


class _Enumerator:
    def __init__(self, ngens: int, limit: int):
        self.ncols = 2 * ngens
        self.limit = limit
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def alive(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if len(self.table) >= self.limit:
            raise Exhausted(self.limit)
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(new)
        self.table[c][x] = new
        self.table[new][x ^ 1] = c

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k != l:
            lo, hi = min(k, l), max(k, l)
            self.parent[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, word: Sequence[int]) -> None:
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])


def _columns(word: Sequence[int]) -> list[int]:
    return [2 * (x - 1) if x > 0 else 2 * (-x - 1) + 1 for x in word]


def todd_coxeter(p: GroupPresentation, limit: int = DEFAULT_LIMIT) -> CosetEnumeration:
    """Enumerate cosets of the trivial subgroup (HLT strategy).

    Raises Exhausted when more than ``limit`` cosets would be defined.
    """
    if limit < 1:
        raise ValueError("limit must be positive")
    rels = [_columns(r) for r in p.relations if r]
    en = _Enumerator(p.ngens, limit)
    c = 0
    while c < len(en.table):
        if en.alive(c):
            for r in rels:
                if not en.alive(c):
                    break
                en.scan_and_fill(c, r)
            if en.alive(c):
                for x in range(en.ncols):
                    if en.table[c][x] is None:
                        en.define(c, x)
        c += 1

    live = [k for k in range(len(en.table)) if en.alive(k)]
    number = {k: n for n, k in enumerate(live)}
    action = [[number[en.rep(en.table[k][2 * i])] for k in live] for i in range(p.ngens)]
    result = CosetEnumeration(order=len(live), action=action, defined=len(en.table))
    _check_enumeration(result, p)
    return result


def _check_enumeration(e: CosetEnumeration, p: GroupPresentation) -> None:
    for perm in e.action:
        assert sorted(perm) == list(range(e.order)), "generator action is not a permutation"
    inverse = [[0] * e.order for _ in e.action]
    for i, perm in enumerate(e.action):
        for c, d in enumerate(perm):
            inverse[i][d] = c
    for r in p.relations:
        for c in range(e.order):
            d = c
            for x in r:
                d = e.action[x - 1][d] if x > 0 else inverse[-x - 1][d]
            assert d == c, "relator does not act trivially on the coset table"


# -- certification ---------------------------------------------------------------


class Status(str, Enum):
    PASS = "PASS"
    FAIL = "FAIL"
    INCONCLUSIVE = "INCONCLUSIVE"

    def __str__(self) -> str:
        return self.value


@dataclass
class Verdict:
    status: Status
    detail: str = ""
    abelianization: Abelianization | None = None
    tc_order: int | None = None
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


def certify_abelian_iso(
    p: GroupPresentation, target: FiniteAbelianGroup, limit: int = DEFAULT_LIMIT
) -> Verdict:
    """Decide whether the presented group is isomorphic to an abelian target.

    Equal orders plus matching abelianization force the group to be abelian,
    so the invariant factors settle the isomorphism.
    """
    ab = abelianization(p)
    try:
        tc = todd_coxeter(p, limit)
    except Exhausted as exc:
        return Verdict(Status.INCONCLUSIVE, str(exc), ab, None)
    if not ab.is_finite or ab.torsion != target.invariant_factors:
        return Verdict(
            Status.FAIL,
            f"abelianization {ab} does not match target {target}",
            ab,
            tc.order,
        )
    if tc.order != target.order:
        return Verdict(
            Status.FAIL, f"order {tc.order} differs from target order {target.order}", ab, tc.order
        )
    if not tc.commute():
        return Verdict(Status.FAIL, "generators do not commute in the regular action", ab, tc.order)
    return Verdict(Status.PASS, f"presented group is abelian and isomorphic to {target}", ab, tc.order)
