"""Character tables modulo a prime (Burnside-Dixon).

The class-sum structure constants are diagonalized simultaneously over
GF(p) with ``p = 1 mod exponent(G)`` and ``p > |G|``.  Every consumer only
needs integer multiplicities and root-of-unity exponents, both of which lift
uniquely from residues under that choice of ``p``; no cyclotomic values are
ever reconstructed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .errors import NoExponent, NonIntegral, NotAPower, NotCentral, SplitFailure
from .groups import ConjugacyClass, FiniteGroup

Vector = list[int]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def choose_prime(G: FiniteGroup) -> int:
    """Smallest prime ``p = 1 mod exponent(G)`` with ``p > |G|``."""
    e = G.exponent
    p = (G.order // e) * e + 1
    while p <= G.order or not is_prime(p):
        p += e
    return p


def valid_primes(G: FiniteGroup, count: int) -> list[int]:
    primes = [choose_prime(G)]
    p = primes[0] + G.exponent
    while len(primes) < count:
        if is_prime(p):
            primes.append(p)
        p += G.exponent
    return primes


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


def root_of_unity(p: int, e: int) -> int:
    """Smallest residue of multiplicative order exactly ``e`` mod ``p``."""
    if (p - 1) % e:
        raise ValueError(f"{p} - 1 is not divisible by {e}")
    for x in range(1, p):
        if multiplicative_order(x, p) == e:
            return x
    raise ValueError("no primitive root of unity")  # unreachable for prime p


def discrete_log(p: int, zeta: int, target: int, e: int) -> int:
    """Least ``k < e`` with ``zeta**k = target (mod p)``, by direct scan."""
    target %= p
    x = 1
    for k in range(e):
        if x == target:
            return k
        x = x * zeta % p
    raise NotAPower(f"{target} is not a power of {zeta} mod {p}")


# -- linear algebra over GF(p) -------------------------------------------------


def rref(rows: Sequence[Sequence[int]], p: int) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        m[r] = [x * inv % p for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(a - f * b) % p for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def nullspace(a: Sequence[Sequence[int]], p: int) -> list[Vector]:
    """Basis of {x : a x = 0} over GF(p)."""
    n = len(a[0])
    red, pivots = rref(a, p)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = -row[f] % p
        basis.append(v)
    return basis


def charpoly(a: Sequence[Sequence[int]], p: int) -> list[int]:
    """Characteristic polynomial (low degree first) via Hessenberg reduction."""
    n = len(a)
    h = [[x % p for x in row] for row in a]
    for m in range(1, n - 1):
        i = next((i for i in range(m, n) if h[i][m - 1]), None)
        if i is None:
            continue
        if i != m:
            h[i], h[m] = h[m], h[i]
            for row in h:
                row[i], row[m] = row[m], row[i]
        inv = pow(h[m][m - 1], -1, p)
        for i in range(m + 1, n):
            u = h[i][m - 1] * inv % p
            if not u:
                continue
            h[i] = [(x - u * y) % p for x, y in zip(h[i], h[m])]
            for row in h:
                row[m] = (row[m] + u * row[i]) % p
    polys: list[list[int]] = [[1]]
    for m in range(1, n + 1):
        prev = polys[m - 1]
        cur = [0] + prev  # x * p_{m-1}
        for k, c in enumerate(prev):
            cur[k] = (cur[k] - h[m - 1][m - 1] * c) % p
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            coef = h[i - 1][m - 1] * prod % p
            if coef:
                for k, c in enumerate(polys[i - 1]):
                    cur[k] = (cur[k] - coef * c) % p
        polys.append(cur)
    return polys[n]


def _roots(poly: Sequence[int], p: int) -> list[int]:
    roots = []
    for x in range(p):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % p
        if acc == 0:
            roots.append(x)
    return roots


# -- Dixon ---------------------------------------------------------------------


def class_matrices(G: FiniteGroup) -> list[list[list[int]]]:
    """``M[j][k][l]`` = #{(x, y) : x in C_j, y in C_k, x y = g_l} for fixed g_l in C_l."""
    classes = G.classes
    r = len(classes)
    owner = G.class_of
    mats = [[[0] * r for _ in range(r)] for _ in range(r)]
    for l, cl in enumerate(classes):
        g = cl.representative
        for j, cj in enumerate(classes):
            for x in cj.members:
                y = int(G.mul[G.inv[x], g])
                mats[j][owner[y]][l] += 1
    return mats


def _split(space: list[Vector], mat: list[list[int]], p: int) -> list[list[Vector]]:
    """Split an invariant subspace into eigenspaces of ``mat``."""
    k = len(space)
    red, pivots = rref(space, p)
    r = len(mat)
    # column i of `restricted` holds the coordinates of mat * red[i]
    restricted = [[0] * k for _ in range(k)]
    for i, b in enumerate(red):
        image = [sum(mat[row][c] * b[c] for c in range(r)) % p for row in range(r)]
        for i2, pc in enumerate(pivots):
            restricted[i2][i] = image[pc]
    pieces = []
    total = 0
    for lam in _roots(charpoly(restricted, p), p):
        shifted = [
            [(x - lam) % p if i == j else x for j, x in enumerate(row)]
            for i, row in enumerate(restricted)
        ]
        coords = nullspace(shifted, p)
        total += len(coords)
        pieces.append(
            [[sum(c * b[col] for c, b in zip(cv, red)) % p for col in range(r)] for cv in coords]
        )
    if total != k:
        raise SplitFailure("class matrix is not diagonalizable over GF(p)")
    return pieces


@dataclass(frozen=True, eq=False)
class CharacterTableModP:
    group: FiniteGroup
    p: int
    zeta: int
    classes: tuple[ConjugacyClass, ...]
    degrees: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def num_irreps(self) -> int:
        return len(self.degrees)

    @cached_property
    def class_sizes(self) -> tuple[int, ...]:
        return tuple(c.size for c in self.classes)

    @cached_property
    def inverse_classes(self) -> tuple[int, ...]:
        return tuple(c.inverse_class for c in self.classes)

    def value(self, V: int, g: int) -> int:
        """chi_V(g) mod p for an element index g."""
        return self.table[V][self.group.class_of[g]]

    def conjugate(self, V: int) -> tuple[int, ...]:
        row = self.table[V]
        return tuple(row[j] for j in self.inverse_classes)

    def regular_character(self) -> list[int]:
        return [self.group.order % self.p] + [0] * (len(self.classes) - 1)

    def product(self, phi: Sequence[int], psi: Sequence[int]) -> list[int]:
        return [a * b % self.p for a, b in zip(phi, psi)]

    def inner(self, phi: Sequence[int], psi: Sequence[int]) -> int:
        """(1/|G|) sum_j |C_j| phi(j) psi(j^-1) mod p."""
        p = self.p
        total = sum(
            s * a * psi[jinv]
            for s, a, jinv in zip(self.class_sizes, phi, self.inverse_classes)
        )
        return total * pow(self.group.order, -1, p) % p

    def row_orthogonality(self) -> bool:
        r = self.num_irreps
        return all(
            self.inner(self.table[v], self.table[w]) == (v == w)
            for v in range(r)
            for w in range(r)
        )

    def column_orthogonality(self) -> bool:
        """sum_V chi_V(j) chi_V(k^-1) = delta_{jk} |C_G(g_j)|."""
        p, order = self.p, self.group.order
        r = len(self.classes)
        for j in range(r):
            for k in range(r):
                kinv = self.inverse_classes[k]
                s = sum(row[j] * row[kinv] for row in self.table) % p
                expected = order // self.class_sizes[j] % p if j == k else 0
                if s != expected:
                    return False
        return True


def character_table_modp(G: FiniteGroup, p: int | None = None) -> CharacterTableModP:
    if p is None:
        p = choose_prime(G)
    if not is_prime(p) or (p - 1) % G.exponent or p <= G.order:
        raise ValueError(f"{p} is not a valid Dixon prime for {G!r}")
    classes = G.classes
    r = len(classes)
    sizes = [c.size for c in classes]
    mats = class_matrices(G)

    spaces: list[list[Vector]] = [[[int(i == j) for j in range(r)] for i in range(r)]]
    for j in range(1, r):
        if all(len(s) == 1 for s in spaces):
            break
        nxt = []
        for s in spaces:
            nxt.extend([s] if len(s) == 1 else _split(s, mats[j], p))
        spaces = nxt
    if len(spaces) != r or any(len(s) != 1 for s in spaces):
        raise SplitFailure(f"eigenspace splitting stalled for {G!r} at p={p}")

    order = G.order
    rows = []
    for (vec,) in spaces:
        if vec[0] == 0:
            raise SplitFailure("eigenvector vanishes on the identity class")
        scale = pow(vec[0], -1, p)
        omega = [x * scale % p for x in vec]
        s = sum(
            omega[j] * omega[classes[j].inverse_class] * pow(sizes[j], -1, p)
            for j in range(r)
        ) % p
        d2 = order * pow(s, -1, p) % p
        d = next((d for d in range(1, math.isqrt(order) + 1) if d * d % p == d2), None)
        if d is None:
            raise SplitFailure("degree does not lift to an integer")
        rows.append((d, tuple(omega[j] * d * pow(sizes[j], -1, p) % p for j in range(r))))
    if sum(d * d for d, _ in rows) != order:
        raise SplitFailure("sum of squared degrees differs from the group order")

    trivial = tuple([1] * r)
    rows.sort(key=lambda dr: (dr[1] != trivial, dr[0], dr[1]))
    return CharacterTableModP(
        group=G,
        p=p,
        zeta=root_of_unity(p, G.exponent),
        classes=tuple(classes),
        degrees=tuple(d for d, _ in rows),
        table=tuple(row for _, row in rows),
    )


def multiplicity(t: CharacterTableModP, phi: Sequence[int], V: int) -> int:
    """Multiplicity of irrep V in the class function phi, lifted to an integer.

    The caller guarantees the true multiplicity is below p.  A lift that
    would make V alone exceed phi's degree means phi is not a character.
    """
    m = t.inner(phi, t.table[V])
    if m * t.degrees[V] > phi[0] % t.p:
        raise NonIntegral(f"multiplicity {m} of irrep {V} exceeds the degree of phi")
    return m


def exponent_table(t: CharacterTableModP) -> list[list[tuple[int, ...]]]:
    """Prime-independent form of the table.

    Entry [V][j] is the sorted multiset of exponents a (mod exponent(G)) such
    that zeta^a runs over the eigenvalues of the class-j representative acting
    on V.  Two primes give the same table up to a Galois twist a -> u*a and
    the induced reordering of irreps.
    """
    G = t.group
    e, p = G.exponent, t.p
    out = []
    for V in range(t.num_irreps):
        row = []
        for cl in t.classes:
            g = cl.representative
            o = G.element_order(g)
            zo = pow(t.zeta, e // o, p)
            values = [t.value(V, G.power(g, k)) for k in range(o)]
            inv_o = pow(o, -1, p)
            exps: list[int] = []
            for a in range(o):
                m = sum(v * pow(zo, (-a * k) % o, p) for k, v in enumerate(values)) * inv_o % p
                if m > t.degrees[V]:
                    raise NonIntegral(f"eigenvalue multiplicity {m} exceeds degree")
                exps.extend([a * (e // o)] * m)
            if len(exps) != t.degrees[V]:
                raise NonIntegral("eigenvalue multiplicities do not sum to the degree")
            row.append(tuple(exps))
        out.append(row)
    return out


def central_character(t: CharacterTableModP, V: int, z: int) -> int:
    """Exponent k with zeta^k = chi_V(z) / chi_V(1) for a central element z."""
    G = t.group
    if t.classes[G.class_of[z]].size != 1:
        raise NotCentral(f"element {G.labels[z]} is not central")
    scalar = t.value(V, z) * pow(t.degrees[V], -1, t.p) % t.p
    try:
        return discrete_log(t.p, t.zeta, scalar, G.exponent)
    except NotAPower as exc:
        raise NoExponent(str(exc)) from exc
