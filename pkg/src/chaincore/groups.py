"""Finite groups as materialized multiplication tables.

Elements are indices ``0..order-1``.  Groups built from permutations keep the
permutation of every element so that permutation input can be mapped back to
indices; every other operation only looks at the table.

Permutations compose right to left: ``(a*b)[x] = a[b[x]]``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .errors import CapExceeded, InvalidPermutation, NotNormal, ParentMismatch

DEFAULT_CAP = 2000

Perm = tuple[int, ...]


def _word_label(tokens: Sequence[str]) -> str:
    if not tokens:
        return "e"
    parts: list[str] = []
    run_name, run_len = tokens[0], 0
    for tok in list(tokens) + [None]:
        if tok == run_name:
            run_len += 1
            continue
        parts.append(run_name if run_len == 1 else f"{run_name}^{run_len}")
        run_name, run_len = tok, 1
    return "*".join(parts)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """A finite group given by its full multiplication table."""

    order: int
    mul: np.ndarray
    inv: tuple[int, ...]
    identity: int
    labels: tuple[str, ...]
    exponent: int
    # optional provenance for permutation groups
    perms: tuple[Perm, ...] | None = None
    gen_names: tuple[str, ...] = ()
    gen_indices: tuple[int, ...] = ()
    name: str = ""

    @classmethod
    def from_table(
        cls,
        mul: np.ndarray | Sequence[Sequence[int]],
        labels: Sequence[str] | None = None,
        **extra,
    ) -> "FiniteGroup":
        table = np.asarray(mul, dtype=np.int64)
        n = table.shape[0]
        if table.shape != (n, n):
            raise ValueError("multiplication table must be square")
        identity = next(
            (e for e in range(n) if np.array_equal(table[e], np.arange(n))), None
        )
        if identity is None:
            raise ValueError("table has no identity element")
        inv_arr = np.argmax(table == identity, axis=1)
        inv = tuple(int(x) for x in inv_arr)
        if labels is None:
            labels = [str(i) for i in range(n)]
        table.setflags(write=False)
        group = cls(
            order=n,
            mul=table,
            inv=inv,
            identity=identity,
            labels=tuple(labels),
            exponent=1,
            **extra,
        )
        exponent = reduce(math.lcm, (group.element_order(g) for g in range(n)), 1)
        object.__setattr__(group, "exponent", exponent)
        return group

    def __repr__(self) -> str:
        tag = self.name or "group"
        return f"<FiniteGroup {tag} order={self.order}>"

    def m(self, a: int, b: int) -> int:
        return int(self.mul[a, b])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv[g], -k
        result = self.identity
        for _ in range(k):
            result = int(self.mul[result, g])
        return result

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = int(self.mul[x, g])
            k += 1
        return k

    def conj(self, g: int, x: int) -> int:
        """Return g x g^-1."""
        return int(self.mul[self.mul[g, x], self.inv[g]])

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    @cached_property
    def perm_index(self) -> dict[Perm, int]:
        if self.perms is None:
            return {}
        return {p: i for i, p in enumerate(self.perms)}

    def index_of_perm(self, perm: Sequence[int]) -> int:
        if self.perms is None:
            raise InvalidPermutation(f"{self!r} has no permutation representation")
        degree = len(self.perms[0])
        p = list(perm)
        while len(p) > degree and p[-1] == len(p) - 1:
            p.pop()
        p = tuple(p) + tuple(range(len(p), degree))
        if len(p) != degree or p not in self.perm_index:
            raise InvalidPermutation(f"{tuple(perm)} is not an element of {self!r}")
        return self.perm_index[p]

    @cached_property
    def classes(self) -> list["ConjugacyClass"]:
        return conjugacy_classes(self)

    @cached_property
    def class_of(self) -> tuple[int, ...]:
        lookup = [0] * self.order
        for c, cls_ in enumerate(self.classes):
            for g in cls_.members:
                lookup[g] = c
        return tuple(lookup)

    def check_axioms(self) -> bool:
        """Exhaustive associativity and inverse scan (O(n^3))."""
        t = self.mul
        n = self.order
        idx = np.arange(n)
        for a in range(n):
            # (a*b)*c for all b,c versus a*(b*c)
            left = t[t[a]]  # row b -> t[a*b, :]
            right = t[a][t]  # [b, c] -> a*(b*c)
            if not np.array_equal(left, right):
                return False
            if t[a, self.inv[a]] != self.identity:
                return False
        return bool(np.array_equal(t[self.identity], idx))


@dataclass(frozen=True)
class ConjugacyClass:
    representative: int
    members: tuple[int, ...]
    inverse_class: int

    @property
    def size(self) -> int:
        return len(self.members)


def group_from_generators(
    perms: Sequence[Sequence[int]],
    names: Sequence[str] | None = None,
    cap: int = DEFAULT_CAP,
    name: str = "",
) -> FiniteGroup:
    """Close a set of permutations of ``{0..n-1}`` into a FiniteGroup.

    Breadth-first closure; element labels are shortest words in the
    generator names (``"e"`` for the identity).
    """
    gens: list[Perm] = []
    degree = max((len(p) for p in perms), default=0)
    for p in perms:
        p = tuple(int(x) for x in p)
        if sorted(p) != list(range(len(p))):
            raise InvalidPermutation(f"{p} is not a permutation of 0..{len(p) - 1}")
        gens.append(p + tuple(range(len(p), degree)))
    if names is None:
        names = [f"g{i}" for i in range(len(gens))]
    if len(names) != len(gens):
        raise ValueError("one name per generator required")

    ident: Perm = tuple(range(degree))
    elements: list[Perm] = [ident]
    index = {ident: 0}
    words: list[list[str]] = [[]]
    parent: list[tuple[int, int]] = [(-1, -1)]
    right: list[list[int]] = [[] for _ in gens]
    queue = deque([0])
    while queue:
        a = queue.popleft()
        pa = elements[a]
        for s, g in enumerate(gens):
            prod = tuple(pa[x] for x in g)
            b = index.get(prod)
            if b is None:
                if len(elements) >= cap:
                    raise CapExceeded(f"closure exceeds cap of {cap} elements")
                b = len(elements)
                index[prod] = b
                elements.append(prod)
                words.append(words[a] + [names[s]])
                parent.append((a, s))
                queue.append(b)
            right[s].append(b)

    n = len(elements)
    right_arr = [np.asarray(r, dtype=np.int64) for r in right]
    mul = np.empty((n, n), dtype=np.int64)
    mul[:, 0] = np.arange(n)
    for b in range(1, n):
        pb, s = parent[b]
        mul[:, b] = right_arr[s][mul[:, pb]]
    gen_indices = tuple(index[g] for g in gens)
    return FiniteGroup.from_table(
        mul,
        labels=[_word_label(w) for w in words],
        perms=tuple(elements),
        gen_names=tuple(names),
        gen_indices=gen_indices,
        name=name,
    )


def _closure(G: FiniteGroup, gens: Iterable[int]) -> frozenset[int]:
    gens = [g for g in set(gens) if g != G.identity]
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        a = queue.popleft()
        for g in gens:
            b = int(G.mul[a, g])
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return frozenset(seen)


@dataclass(frozen=True, eq=False)
class Subgroup:
    """A subgroup of ``parent`` stored as a sorted tuple of parent indices."""

    parent: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(sorted(self.elements)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subgroup):
            return NotImplemented
        return self.parent is other.parent and self.elements == other.elements

    def __hash__(self) -> int:
        return hash((id(self.parent), self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, g: int) -> bool:
        return g in self.element_set

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def from_parent(self) -> dict[int, int]:
        return {g: i for i, g in enumerate(self.elements)}

    @cached_property
    def as_group(self) -> FiniteGroup:
        """The subgroup as a standalone FiniteGroup; index i is ``elements[i]``."""
        sub = np.asarray(self.elements, dtype=np.int64)
        lookup = np.full(self.parent.order, -1, dtype=np.int64)
        lookup[sub] = np.arange(len(sub))
        table = lookup[self.parent.mul[np.ix_(sub, sub)]]
        if (table < 0).any():
            raise ValueError("element set is not closed under multiplication")
        return FiniteGroup.from_table(
            table, labels=[self.parent.labels[g] for g in self.elements]
        )

    def check(self) -> bool:
        G = self.parent
        s = self.element_set
        if G.identity not in s or G.order % len(s):
            return False
        return all(G.inv[a] in s for a in s) and all(
            int(G.mul[a, b]) in s for a in s for b in s
        )


def trivial_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, (G.identity,))


def full_subgroup(G: FiniteGroup) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)))


def subgroup_generated(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    elems = list(elems)
    for g in elems:
        if not 0 <= g < G.order:
            raise IndexError(f"element index {g} out of range for {G!r}")
    return Subgroup(G, tuple(_closure(G, elems)))


def _same_parent(H: Subgroup, K: Subgroup) -> FiniteGroup:
    if H.parent is not K.parent:
        raise ParentMismatch("subgroups belong to different groups")
    return H.parent


def intersection(H: Subgroup, K: Subgroup) -> Subgroup:
    G = _same_parent(H, K)
    result = Subgroup(G, tuple(H.element_set & K.element_set))
    assert result.check(), "intersection of subgroups is not closed"
    return result


def join(H: Subgroup, K: Subgroup) -> Subgroup:
    G = _same_parent(H, K)
    return Subgroup(G, tuple(_closure(G, H.elements + K.elements)))


def center(G: FiniteGroup) -> Subgroup:
    t = G.mul
    central = [z for z in range(G.order) if np.array_equal(t[z], t[:, z])]
    return Subgroup(G, tuple(central))


def is_normal(G: FiniteGroup, H: Subgroup) -> bool:
    s = H.element_set
    gens = G.gen_indices or range(G.order)
    # stability under conjugation by a generating set suffices
    return all(G.conj(g, h) in s for g in gens for h in H.elements)


def normal_closure(G: FiniteGroup, H: Subgroup) -> Subgroup:
    current = H
    while True:
        conjugates = {G.conj(g, h) for g in range(G.order) for h in current.elements}
        if conjugates <= current.element_set:
            return current
        current = subgroup_generated(G, current.elements + tuple(conjugates))


def derived_subgroup(G: FiniteGroup) -> Subgroup:
    t, inv = G.mul, G.inv
    comms = {
        int(t[t[inv[a], inv[b]], t[a, b]])
        for a in range(G.order)
        for b in range(G.order)
    }
    return subgroup_generated(G, comms)


def quotient_group(G: FiniteGroup, N: Subgroup) -> FiniteGroup:
    """The group of left cosets gN with the induced multiplication."""
    if N.parent is not G:
        raise ParentMismatch("N is not a subgroup of G")
    if not is_normal(G, N):
        raise NotNormal("quotient requires a normal subgroup")
    coset = [-1] * G.order
    reps: list[int] = []
    for g in range(G.order):
        if coset[g] >= 0:
            continue
        for n in N.elements:
            coset[int(G.mul[g, n])] = len(reps)
        reps.append(g)
    table = [[coset[int(G.mul[a, b])] for b in reps] for a in reps]
    return FiniteGroup.from_table(table, labels=[f"{G.labels[r]}N" for r in reps])


def conjugacy_classes(G: FiniteGroup) -> list[ConjugacyClass]:
    """Conjugacy classes; the identity class comes first, then discovery order."""
    owner = [-1] * G.order
    members: list[list[int]] = []
    order = [G.identity] + [g for g in range(G.order) if g != G.identity]
    for x in order:
        if owner[x] >= 0:
            continue
        orbit = {G.conj(g, x) for g in range(G.order)}
        for y in orbit:
            owner[y] = len(members)
        members.append(sorted(orbit))
    result = []
    for c, mem in enumerate(members):
        result.append(
            ConjugacyClass(
                representative=mem[0] if c else G.identity,
                members=tuple(mem),
                inverse_class=owner[G.inv[mem[0]]],
            )
        )
    return result


def cyclic_subgroups(G: FiniteGroup) -> list[Subgroup]:
    seen: dict[tuple[int, ...], Subgroup] = {}
    for g in range(G.order):
        H = subgroup_generated(G, [g])
        seen.setdefault(H.elements, H)
    return list(seen.values())


def subgroup_lattice(G: FiniteGroup) -> list[Subgroup]:
    """All subgroups: cyclic ones, then pairwise joins to a fixed point.

    Sorted by (order, elements) for deterministic output.
    """
    found: dict[tuple[int, ...], Subgroup] = {H.elements: H for H in cyclic_subgroups(G)}
    frontier = list(found.values())
    while frontier:
        base = list(found.values())
        fresh: list[Subgroup] = []
        for H in frontier:
            for K in base:
                if H.element_set <= K.element_set or K.element_set <= H.element_set:
                    continue
                J = join(H, K)
                if J.elements not in found:
                    found[J.elements] = J
                    fresh.append(J)
        frontier = fresh
    return sorted(found.values(), key=lambda H: (H.order, H.elements))
