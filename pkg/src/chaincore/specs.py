"""Group and subgroup spec mini-language.

Group specs::

    S<n>  A<n>  D<n> (dihedral of order 2n)  C<n>  Q8  SL23
    products with ``x``:  C2xC4, S3xC2
    explicit permutations:  perm:[(0 1),(0 1 2)]

Subgroup specs::

    gen:[i, j^2]  gen:[(0 1 2)]  center  derived  trivial  full
"""

from __future__ import annotations

import re
from itertools import product

from .errors import InvalidPermutation, SpecParseError
from .groups import (
    DEFAULT_CAP,
    FiniteGroup,
    Subgroup,
    center,
    derived_subgroup,
    full_subgroup,
    group_from_generators,
    subgroup_generated,
    trivial_subgroup,
)

Perm = tuple[int, ...]


def _cycle(n: int, points: list[int]) -> Perm:
    p = list(range(n))
    for a, b in zip(points, points[1:] + points[:1]):
        p[a] = b
    return tuple(p)


def _cyclic(n: int):
    if n == 1:
        return [], []
    return [_cycle(n, list(range(n)))], ["a"]


def _symmetric(n: int):
    if n < 2:
        return [], []
    if n == 2:
        return [(1, 0)], ["t"]
    return [_cycle(n, [0, 1]), _cycle(n, list(range(n)))], ["t", "c"]


def _alternating(n: int):
    if n < 3:
        return [], []
    gens = [_cycle(n, [0, 1, k]) for k in range(2, n)]
    return gens, [f"c{k}" for k in range(2, n)]


def _dihedral(n: int):
    if n == 1:
        return [(1, 0)], ["s"]
    if n == 2:
        return [(1, 0, 3, 2), (2, 3, 0, 1)], ["r", "s"]
    rot = _cycle(n, list(range(n)))
    refl = tuple((-x) % n for x in range(n))
    return [rot, refl], ["r", "s"]


def _quaternion():
    # units of Q8 as (sign, axis) with axis in 1,i,j,k
    units = [(s, a) for a in range(4) for s in (1, -1)]
    table = {
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }  # fmt: skip

    def times(x, y):
        s, a = table[(x[1], y[1])]
        return (x[0] * y[0] * s, a)

    pos = {u: k for k, u in enumerate(units)}
    gens = [tuple(pos[times(g, u)] for u in units) for g in ((1, 1), (1, 2))]
    return gens, ["i", "j"]


def _sl23():
    vecs = [v for v in product(range(3), repeat=2) if v != (0, 0)]
    pos = {v: k for k, v in enumerate(vecs)}

    def act(m):
        return tuple(
            pos[((m[0][0] * x + m[0][1] * y) % 3, (m[1][0] * x + m[1][1] * y) % 3)]
            for x, y in vecs
        )

    return [act(((1, 1), (0, 1))), act(((1, 0), (1, 1)))], ["x", "y"]


_PRESETS = {"S": _symmetric, "A": _alternating, "D": _dihedral, "C": _cyclic}
_FACTOR = re.compile(r"(SL23|Q8|[SADC](\d+))$")


def _factor(text: str, offset: int):
    m = _FACTOR.match(text)
    if not m:
        raise SpecParseError("unknown group factor", text, offset)
    if text == "Q8":
        return _quaternion()
    if text == "SL23":
        return _sl23()
    n = int(m.group(2))
    if n < 1:
        raise SpecParseError("group parameter must be positive", text, offset)
    if text[0] == "S" and n > 7 or text[0] == "A" and n > 7:
        raise SpecParseError("preset too large for the table engine", text, offset)
    return _PRESETS[text[0]](n)


def parse_cycles(text: str, offset: int = 0) -> Perm:
    """Parse ``(0 1 2)(3 4)`` into an image tuple (degree = largest point + 1)."""
    text = text.strip()
    cycles: list[list[int]] = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        if text[pos] != "(":
            raise SpecParseError("expected '('", text, offset + pos)
        end = text.find(")", pos)
        if end < 0:
            raise SpecParseError("unclosed cycle", text, offset + pos)
        body = text[pos + 1 : end].replace(",", " ").split()
        try:
            cycles.append([int(x) for x in body])
        except ValueError:
            raise SpecParseError("non-integer point in cycle", text, offset + pos) from None
        pos = end + 1
    points = [x for c in cycles for x in c]
    if any(x < 0 for x in points):
        raise SpecParseError("negative point in cycle", text, offset)
    n = max(points, default=-1) + 1
    perm = list(range(n))
    seen: set[int] = set()
    for c in cycles:
        if len(set(c)) != len(c) or seen & set(c):
            raise SpecParseError("cycles must be disjoint", text, offset)
        seen |= set(c)
        for a, b in zip(c, c[1:] + c[:1]):
            perm[a] = b
    return tuple(perm)


def _split_list(text: str, offset: int) -> list[tuple[str, int]]:
    """Split the body of ``[...]`` at top-level commas, keeping offsets."""
    if not (text.startswith("[") and text.endswith("]")):
        raise SpecParseError("expected a bracketed list", text, offset)
    items: list[tuple[str, int]] = []
    depth, start = 0, 1
    for k, ch in enumerate(text[1:-1], start=1):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append((text[start:k], offset + start))
            start = k + 1
    last = text[start:-1]
    if last.strip() or items:
        items.append((last, offset + start))
    return [(s.strip(), o) for s, o in items]


def parse_group_spec(spec: str, cap: int = DEFAULT_CAP) -> FiniteGroup:
    spec = spec.strip()
    if spec.startswith("perm:"):
        perms = [parse_cycles(s, o) for s, o in _split_list(spec[5:], 5)]
        degree = max((len(p) for p in perms), default=0)
        perms = [p + tuple(range(len(p), degree)) for p in perms]
        names = [f"g{k}" for k in range(len(perms))]
        try:
            return group_from_generators(perms, names, cap=cap, name=spec)
        except InvalidPermutation as exc:
            raise SpecParseError(str(exc), spec, 0) from exc
    if not spec:
        raise SpecParseError("empty group spec", spec, 0)
    factors = []
    offset = 0
    for part in spec.split("x"):
        factors.append(_factor(part, offset))
        offset += len(part) + 1
    if len(factors) == 1:
        gens, names = factors[0]
        return group_from_generators(gens, names, cap=cap, name=spec)
    # direct product on disjoint point sets
    degrees = [len(g[0]) if g else 0 for g, _ in factors]
    total = sum(degrees)
    all_gens, all_names = [], []
    shift = 0
    for k, ((gens, names), deg) in enumerate(zip(factors, degrees), start=1):
        for g, nm in zip(gens, names):
            p = list(range(total))
            for x in range(deg):
                p[shift + x] = shift + g[x]
            all_gens.append(tuple(p))
            all_names.append(f"{nm}{k}")
        shift += deg
    return group_from_generators(all_gens, all_names, cap=cap, name=spec)


def parse_word(G: FiniteGroup, text: str, offset: int = 0) -> int:
    """Evaluate a word such as ``i*j^-1`` or ``ij`` in the generator names."""
    names = sorted(G.gen_names, key=len, reverse=True)
    lookup = dict(zip(G.gen_names, G.gen_indices))
    result = G.identity
    pos = 0
    text = text.strip()
    if text in ("e", "1") and "e" not in lookup:
        return G.identity
    while pos < len(text):
        ch = text[pos]
        if ch.isspace() or ch == "*":
            pos += 1
            continue
        name = next((n for n in names if text.startswith(n, pos)), None)
        if name is None:
            raise SpecParseError("unknown generator name", text, offset + pos)
        pos += len(name)
        exp = 1
        m = re.compile(r"\^(-?\d+)").match(text, pos)
        if m:
            exp = int(m.group(1))
            pos = m.end()
        result = G.m(result, G.power(lookup[name], exp))
    return result


def parse_subgroup_spec(G: FiniteGroup, spec: str) -> Subgroup:
    spec = spec.strip()
    if spec == "center":
        return center(G)
    if spec == "derived":
        return derived_subgroup(G)
    if spec == "trivial":
        return trivial_subgroup(G)
    if spec == "full":
        return full_subgroup(G)
    if not spec.startswith("gen:"):
        raise SpecParseError("unknown subgroup spec", spec, 0)
    elems = []
    for item, off in _split_list(spec[4:], 4):
        if item.startswith("("):
            try:
                elems.append(G.index_of_perm(parse_cycles(item, off)))
            except InvalidPermutation as exc:
                raise SpecParseError(str(exc), spec, off) from exc
        else:
            elems.append(parse_word(G, item, off))
    return subgroup_generated(G, elems)
