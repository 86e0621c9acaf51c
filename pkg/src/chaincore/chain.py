"""Relative chain groups, relative centers and the canonical map between them.

For H <= G the chain group C(G, H) has one generator per irrep of G and a
relation g_U = g_V g_W whenever U and V (x) W share a constituent after
restriction to H.  The canonical map sends g_V to the central character of V
restricted to Z(G) & H; ``verify_caniso`` checks that it is well defined,
onto, and that C(G, H) is isomorphic to the character group of Z(G) & H.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from itertools import product

from .charmodp import CharacterTableModP, central_character, character_table_modp, choose_prime
from .errors import Exhausted, NoExponent, NonCommutativeFusion, NotAbelian
from .fusion import BranchingData, FusionFile, branching_from_groups, fusion_from_group, non_disjoint
from .groups import FiniteGroup, Subgroup, center, intersection, join
from .presentations import (
    DEFAULT_LIMIT,
    Abelianization,
    FiniteAbelianGroup,
    GroupPresentation,
    Status,
    Verdict,
    smith_transforms,
    abelianization,
    certify_abelian_iso,
    row_span_checker,
    todd_coxeter,
)

Triple = tuple[int, int, int]


class GroupContext:
    """Character table and fusion data of G plus per-subgroup caches."""

    def __init__(self, G: FiniteGroup, p: int | None = None):
        self.group = G
        self.p = p if p is not None else choose_prime(G)
        self.table = character_table_modp(G, self.p)
        self.fusion = fusion_from_group(self.table)
        self.center = center(G)
        self._tables: dict[tuple[int, ...], CharacterTableModP] = {}
        self._branching: dict[tuple[int, ...], BranchingData] = {}

    def subgroup_table(self, H: Subgroup) -> CharacterTableModP:
        if H.elements not in self._tables:
            self._tables[H.elements] = character_table_modp(H.as_group, self.p)
        return self._tables[H.elements]

    def branching(self, H: Subgroup) -> BranchingData:
        if H.elements not in self._branching:
            tH = self.subgroup_table(H)
            self._branching[H.elements] = branching_from_groups(
                self.table, tH, H.elements, big=self.fusion
            )
        return self._branching[H.elements]


# -- presentation ----------------------------------------------------------------


def chain_relations(b: BranchingData) -> list[Triple]:
    r = b.big.rank
    return [
        (U, V, W)
        for V in range(r)
        for W in range(r)
        for U in range(r)
        if non_disjoint(b, U, V, W)
    ]


def chain_presentation(b: BranchingData, allow_noncommutative: bool = False) -> GroupPresentation:
    """Generators g_V (1-based index V+1); relation g_U^-1 g_V g_W per non-disjoint triple."""
    if not b.big.commutative and not allow_noncommutative:
        raise NonCommutativeFusion("chain presentation needs a commutative fusion ring")
    seen: dict[tuple[int, ...], None] = {}
    for U, V, W in chain_relations(b):
        word = GroupPresentation(b.big.rank, ((-(U + 1), V + 1, W + 1),)).relations[0]
        if word:
            seen.setdefault(word)
    return GroupPresentation(b.big.rank, tuple(seen))


# -- relative center and its dual ------------------------------------------------


def relative_center(G: FiniteGroup, H: Subgroup) -> Subgroup:
    return intersection(center(G), H)


def _require_abelian(Z: Subgroup) -> None:
    G = Z.parent
    if any(G.m(a, b) != G.m(b, a) for a in Z.elements for b in Z.elements):
        raise NotAbelian("subgroup is not abelian")


def _prime_factors(n: int) -> list[int]:
    out, d = [], 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def dual_group(Z: Subgroup) -> FiniteAbelianGroup:
    """Invariant factors of an abelian subgroup (and of its character group).

    For each prime q the number of elements with x^(q^k) = 1 is q^(s_k), and
    s_k - s_(k-1) counts the cyclic q-factors of order at least q^k.
    """
    _require_abelian(Z)
    G = Z.parent
    orders = [G.element_order(z) for z in Z.elements]
    cyclic: list[int] = []
    for q in _prime_factors(Z.order):
        prev, k, exps = 0, 1, []
        while True:
            count = sum(1 for o in orders if (q**k) % o == 0)
            s = round(math.log(count, q))
            assert q**s == count
            if s == prev:
                break
            exps.append(s - prev)  # factors of order >= q^k
            prev, k = s, k + 1
        # exps[k-1] = #factors with exponent >= k
        for k in range(len(exps)):
            at_least = exps[k]
            above = exps[k + 1] if k + 1 < len(exps) else 0
            cyclic.extend([q ** (k + 1)] * (at_least - above))
    return FiniteAbelianGroup.from_cyclic_orders(cyclic)


def abelian_basis(Z: Subgroup) -> list[tuple[int, int]]:
    """Generators (parent index, order) exhibiting Z as a product of cyclic groups
    in invariant-factor form."""
    _require_abelian(Z)
    G = Z.parent
    span: dict[int, tuple[int, ...]] = {G.identity: ()}
    gens: list[int] = []
    rels: list[list[int]] = []
    for z in sorted(Z.elements, key=lambda x: (-G.element_order(x), x)):
        if z in span:
            continue
        m, x = 1, z
        while x not in span:
            x = G.m(x, z)
            m += 1
        rels.append([-c for c in span[x]] + [m])
        fresh: dict[int, tuple[int, ...]] = {}
        for y, vec in span.items():
            w = y
            for k in range(m):
                fresh[w] = vec + (k,)
                w = G.m(w, z)
        span = fresh
        gens.append(z)
    s = len(gens)
    if s == 0:
        return []
    R = [row + [0] * (s - len(row)) for row in rels]
    A, _, _, Vinv = smith_transforms(R)
    basis = []
    for j in range(s):
        if A[j][j] == 1:
            continue
        z = G.identity
        for gi, c in zip(gens, Vinv[j]):
            z = G.m(z, G.power(gi, c))
        basis.append((z, A[j][j]))
    return basis


@dataclass
class CentralCharacterTable:
    Z: Subgroup
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    images: list[tuple[int, ...]]  # per irrep of G: a_j in Z/orders[j]

    def character_group(self) -> FiniteAbelianGroup:
        return FiniteAbelianGroup.from_cyclic_orders(self.orders)

    def add(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % d for a, b, d in zip(x, y, self.orders))


def canonical_map(b: BranchingData, t: CharacterTableModP, Z: Subgroup) -> CentralCharacterTable:
    """Restrict the central character of every irrep of G to Z.

    Image of V is the tuple (a_j) with chi_V(z_j)/chi_V(1) = exp(2 pi i a_j / d_j)
    for the invariant-factor generators z_j of order d_j.
    """
    if b.big.rank != t.num_irreps:
        raise ValueError("branching data and character table disagree on the irreps of G")
    basis = abelian_basis(Z)
    gens = tuple(z for z, _ in basis)
    orders = tuple(d for _, d in basis)
    e = t.group.exponent
    images = []
    for V in range(t.num_irreps):
        tup = []
        for z, d in basis:
            k = central_character(t, V, z)
            if k % (e // d):
                raise NoExponent(f"central character exponent {k} is not of order dividing {d}")
            tup.append(k // (e // d) % d)
        images.append(tuple(tup))
    table = CentralCharacterTable(Z, gens, orders, images)
    _check_characters(table, t)
    return table


def _check_characters(table: CentralCharacterTable, t: CharacterTableModP) -> None:
    """Every element of Z is hit once by the basis, and each image is a homomorphism."""
    G = t.group
    e = G.exponent
    hit: dict[int, tuple[int, ...]] = {}
    for exps in product(*(range(d) for d in table.orders)):
        z = G.identity
        for g, n in zip(table.generators, exps):
            z = G.m(z, G.power(g, n))
        assert z not in hit, "basis does not give a direct decomposition"
        hit[z] = exps
    assert set(hit) == table.Z.element_set, "basis does not generate Z"
    for V, img in enumerate(table.images):
        for z, exps in hit.items():
            k = sum(a * n * (e // d) for a, n, d in zip(img, exps, table.orders)) % e
            assert central_character(t, V, z) == k, "central character is not multiplicative"


def _closure(images, add, zero) -> set:
    seen = {zero}
    queue = deque([zero])
    while queue:
        x = queue.popleft()
        for g in images:
            y = add(x, g)
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


# -- verification ----------------------------------------------------------------


@dataclass
class ChainGroupReport:
    presentation: GroupPresentation
    relation_count: int
    chain_invariants: Abelianization
    tc_order: int | None
    target: FiniteAbelianGroup | None
    canonical_images: list[tuple[int, ...]]
    verdicts: dict[str, Verdict] = field(default_factory=dict)
    labels: tuple[str, ...] = ()

    @property
    def status(self) -> Status:
        statuses = [v.status for v in self.verdicts.values()]
        if Status.FAIL in statuses:
            return Status.FAIL
        if Status.INCONCLUSIVE in statuses:
            return Status.INCONCLUSIVE
        return Status.PASS

    @property
    def passed(self) -> bool:
        return self.status is Status.PASS


def _tc_order(pres: GroupPresentation, limit: int) -> int | None:
    try:
        return todd_coxeter(pres, limit).order
    except Exhausted:
        return None


def verify_caniso(
    G: FiniteGroup,
    H: Subgroup,
    *,
    context: GroupContext | None = None,
    limit: int = DEFAULT_LIMIT,
) -> ChainGroupReport:
    ctx = context if context is not None and context.group is G else GroupContext(G)
    b = ctx.branching(H)
    pres = chain_presentation(b)
    triples = chain_relations(b)
    Z = relative_center(G, H)
    cc = canonical_map(b, ctx.table, Z)
    target = dual_group(Z)
    ab = abelianization(pres)
    verdicts: dict[str, Verdict] = {}

    broken = [
        (U, V, W)
        for U, V, W in triples
        if cc.images[U] != cc.add(cc.images[V], cc.images[W])
    ]
    verdicts["well-defined"] = Verdict(
        Status.FAIL if broken else Status.PASS,
        f"relation {broken[0]} not respected" if broken else f"{len(triples)} relation triples respected",
    )

    zero = tuple(0 for _ in cc.orders)
    reached = _closure(cc.images, cc.add, zero)
    full = math.prod(cc.orders)
    verdicts["surjective"] = Verdict(
        Status.PASS if len(reached) == full else Status.FAIL,
        f"images generate {len(reached)} of {full} characters",
    )

    iso = certify_abelian_iso(pres, target, limit)
    verdicts["isomorphism"] = iso
    if cc.character_group() != target:
        verdicts["dual group"] = Verdict(
            Status.FAIL, f"basis decomposition {cc.character_group()} vs element-order count {target}"
        )

    tc = iso.tc_order
    if tc is not None and ab.is_finite:
        verdicts["abelianization divides TC order"] = Verdict(
            Status.PASS if tc % ab.order == 0 else Status.FAIL, f"|C^ab| = {ab.order}, |C| = {tc}"
        )
    return ChainGroupReport(
        presentation=pres,
        relation_count=len(pres.relations),
        chain_invariants=ab,
        tc_order=tc,
        target=target,
        canonical_images=cc.images,
        verdicts=verdicts,
        labels=ctx.fusion.labels,
    )


def chain_report_from_fusion(
    ff: FusionFile, *, allow_noncommutative: bool = False, limit: int = DEFAULT_LIMIT
) -> ChainGroupReport:
    """Chain group of a file-based fusion pair; compared to ``expected_chain_group`` if given."""
    b = ff.pair
    commutative = b.big.commutative
    pres = chain_presentation(b, allow_noncommutative=allow_noncommutative)
    ab = abelianization(pres)
    tc = _tc_order(pres, limit)
    verdicts: dict[str, Verdict] = {}
    if tc is not None and ab.is_finite:
        verdicts["abelianization divides TC order"] = Verdict(
            Status.PASS if tc % ab.order == 0 else Status.FAIL, f"|C^ab| = {ab.order}, |C| = {tc}"
        )
    target = None
    if ff.expected_chain_group is not None and commutative:
        target = FiniteAbelianGroup(tuple(ff.expected_chain_group))
        verdicts["expected chain group"] = certify_abelian_iso(pres, target, limit)
    return ChainGroupReport(
        presentation=pres,
        relation_count=len(pres.relations),
        chain_invariants=ab,
        tc_order=tc,
        target=target,
        canonical_images=[],
        verdicts=verdicts,
        labels=b.big.labels,
    )


def verify_iso_theorem(G: FiniteGroup, H: Subgroup) -> Verdict:
    """H/(Z & H) -> (Z v H)/Z, h (Z & H) -> h Z, is a bijection (Z = Z(G))."""
    Z = center(G)
    ZH = intersection(Z, H)
    J = join(Z, H)
    if H.order * Z.order != J.order * ZH.order:
        return Verdict(Status.FAIL, f"|H|/|Z&H| = {H.order}/{ZH.order} but |ZvH|/|Z| = {J.order}/{Z.order}")

    def coset(h: int, K: Subgroup) -> frozenset[int]:
        return frozenset(G.m(h, k) for k in K.elements)

    mapping: dict[frozenset[int], frozenset[int]] = {}
    for h in H.elements:
        src, dst = coset(h, ZH), coset(h, Z)
        if mapping.setdefault(src, dst) != dst:
            return Verdict(Status.FAIL, "induced map is not well defined")
    images = set(mapping.values())
    if len(images) != len(mapping):
        return Verdict(Status.FAIL, "induced map is not injective")
    targets = {coset(g, Z) for g in J.elements}
    if images != targets:
        return Verdict(Status.FAIL, "induced map is not surjective")
    return Verdict(
        Status.PASS, f"{len(mapping)} cosets of Z&H in H match {len(targets)} cosets of Z in ZvH"
    )


@dataclass
class FunctorialityResult:
    small_to_large: bool  # g_V -> g_V is well defined as C(G,K) -> C(G,H)
    large_to_small: bool  # ... as C(G,H) -> C(G,K)
    relations_monotone: bool  # relations of C(G,H) are relations of C(G,K)

    @property
    def direction(self) -> str:
        if self.small_to_large and self.large_to_small:
            return "both"
        if self.large_to_small:
            return "C(G,H) -> C(G,K)"
        if self.small_to_large:
            return "C(G,K) -> C(G,H)"
        return "neither"

    def verdict(self) -> Verdict:
        ok = self.relations_monotone and self.large_to_small
        return Verdict(
            Status.PASS if ok else Status.FAIL,
            f"identity on generators well defined: {self.direction}",
            extra={"direction": self.direction},
        )


def verify_chain_functoriality(
    G: FiniteGroup, K: Subgroup, H: Subgroup, *, context: GroupContext | None = None
) -> FunctorialityResult:
    """For K <= H <= G, find which way g_V -> g_V respects the chain relations."""
    if not K.element_set <= H.element_set:
        raise ValueError("K must be a subgroup of H")
    ctx = context if context is not None and context.group is G else GroupContext(G)
    rel_H = set(chain_relations(ctx.branching(H)))
    rel_K = set(chain_relations(ctx.branching(K)))
    pres_H = chain_presentation(ctx.branching(H))
    pres_K = chain_presentation(ctx.branching(K))
    mat_H = pres_H.relation_matrix()
    mat_K = pres_K.relation_matrix()
    in_H, in_K = row_span_checker(mat_H), row_span_checker(mat_K)
    return FunctorialityResult(
        small_to_large=all(in_H(r) for r in mat_K),
        large_to_small=all(in_K(r) for r in mat_H),
        relations_monotone=rel_H <= rel_K,
    )
