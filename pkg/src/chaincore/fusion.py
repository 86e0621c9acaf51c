"""Fusion rings, branching matrices, restriction and induction.

Group-derived data comes from mod-p character tables; quantum examples are
loaded from JSON fusion files and trusted once they pass the axiom checks.
"""

from __future__ import annotations

import json
import string
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Sequence

from .charmodp import CharacterTableModP, multiplicity
from .errors import (
    DimensionMismatch,
    NonCommutativeFusion,
    NotAHomomorphism,
    ParseError,
    PrimeMismatch,
    ValidationError,
)

DATA_DIR = Path(__file__).parent / "data"


@dataclass(frozen=True, eq=False)
class FusionData:
    labels: tuple[str, ...]
    dims: tuple[int, ...]
    unit: int
    dual: tuple[int, ...]
    N: dict[tuple[int, int], tuple[int, ...]]
    commutative: bool = True

    @property
    def rank(self) -> int:
        return len(self.labels)

    def basis(self, V: int) -> list[int]:
        return [int(U == V) for U in range(self.rank)]

    def tensor(self, x: Sequence[int], y: Sequence[int]) -> list[int]:
        """Product of multiplicity vectors in the representation ring."""
        out = [0] * self.rank
        for V, a in enumerate(x):
            if not a:
                continue
            for W, b in enumerate(y):
                if not b:
                    continue
                for U, n in enumerate(self.N[V, W]):
                    if n:
                        out[U] += a * b * n
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, FusionData):
            return NotImplemented
        return (self.labels, self.dims, self.unit, self.dual, self.N) == (
            other.labels,
            other.dims,
            other.unit,
            other.dual,
            other.N,
        )

    def to_json(self) -> dict:
        return {
            "labels": list(self.labels),
            "dims": list(self.dims),
            "unit": self.unit,
            "dual": list(self.dual),
            "tensor": [
                {"v": v, "w": w, "out": list(out)}
                for (v, w), out in sorted(self.N.items())
                if any(out)
            ],
        }


@dataclass(frozen=True, eq=False)
class BranchingData:
    big: FusionData
    small: FusionData
    B: tuple[tuple[int, ...], ...]

    def row(self, V: int) -> list[int]:
        return list(self.B[V])


@dataclass
class ValidationReport:
    failures: list[tuple[str, str]] = field(default_factory=list)
    checked: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    def fail(self, axiom: str, detail: str) -> None:
        self.failures.append((axiom, detail))

    def axioms_failed(self) -> list[str]:
        return sorted({a for a, _ in self.failures})

    def __str__(self) -> str:
        if self.ok:
            return "all checks pass: " + ", ".join(self.checked)
        return "\n".join(f"{a}: {d}" for a, d in self.failures)


# -- construction from groups ----------------------------------------------------


def irrep_labels(degrees: Sequence[int]) -> list[str]:
    """ATLAS-style names: 1a (trivial), 1b, 2a, 3a, 3b, ..."""
    seen: dict[int, int] = {}
    labels = []
    for d in degrees:
        k = seen.get(d, 0)
        seen[d] = k + 1
        suffix = string.ascii_lowercase[k] if k < 26 else f"_{k}"
        labels.append(f"{d}{suffix}")
    return labels


def fusion_from_group(t: CharacterTableModP) -> FusionData:
    r = t.num_irreps
    rows = {row: V for V, row in enumerate(t.table)}
    dual = tuple(rows[t.conjugate(V)] for V in range(r))
    N: dict[tuple[int, int], tuple[int, ...]] = {}
    for V in range(r):
        for W in range(V, r):
            prod = t.product(t.table[V], t.table[W])
            out = tuple(multiplicity(t, prod, U) for U in range(r))
            N[V, W] = N[W, V] = out
    return FusionData(
        labels=tuple(irrep_labels(t.degrees)),
        dims=t.degrees,
        unit=0,
        dual=dual,
        N=N,
        commutative=True,
    )


def _check_embedding(tG: CharacterTableModP, tH: CharacterTableModP, embed: Sequence[int]):
    G, H = tG.group, tH.group
    if len(embed) != H.order or len(set(embed)) != H.order:
        raise NotAHomomorphism("embedding is not injective")
    for a in range(H.order):
        for b in range(H.order):
            if embed[H.m(a, b)] != G.m(embed[a], embed[b]):
                raise NotAHomomorphism(
                    f"embed({H.labels[a]}*{H.labels[b]}) != embed(a)*embed(b)"
                )


def branching_from_groups(
    tG: CharacterTableModP,
    tH: CharacterTableModP,
    embed: Sequence[int],
    big: FusionData | None = None,
    small: FusionData | None = None,
) -> BranchingData:
    """Restriction multiplicities of G-irreps to H along ``embed: H -> G``."""
    if tG.p != tH.p:
        raise PrimeMismatch(f"tables use different primes ({tG.p} vs {tH.p})")
    _check_embedding(tG, tH, embed)
    reps = [embed[c.representative] for c in tH.classes]
    B = []
    for V in range(tG.num_irreps):
        phi = [tG.value(V, g) for g in reps]
        B.append(tuple(multiplicity(tH, phi, W) for W in range(tH.num_irreps)))
    return BranchingData(
        big=big if big is not None else fusion_from_group(tG),
        small=small if small is not None else fusion_from_group(tH),
        B=tuple(B),
    )


def identity_branching(f: FusionData) -> BranchingData:
    return BranchingData(big=f, small=f, B=tuple(tuple(f.basis(V)) for V in range(f.rank)))


# -- multiplicity-level functors -------------------------------------------------


def restrict(b: BranchingData, x: Sequence[int]) -> list[int]:
    if len(x) != b.big.rank:
        raise DimensionMismatch(f"expected a vector of length {b.big.rank}")
    out = [0] * b.small.rank
    for V, a in enumerate(x):
        if a:
            for W, m in enumerate(b.B[V]):
                out[W] += a * m
    return out


def induce(b: BranchingData, y: Sequence[int]) -> list[int]:
    if len(y) != b.small.rank:
        raise DimensionMismatch(f"expected a vector of length {b.small.rank}")
    return [sum(m * c for m, c in zip(row, y)) for row in b.B]


def non_disjoint(b: BranchingData, U: int, V: int, W: int) -> bool:
    """Do U and V (x) W share a simple constituent after restriction?"""
    ru = b.B[U]
    prod = b.small.tensor(b.B[V], b.B[W])
    return any(a and c for a, c in zip(ru, prod))


# -- validation ------------------------------------------------------------------


def validate(f: FusionData) -> ValidationReport:
    report = ValidationReport()
    r = f.rank
    idx = range(r)
    report.checked.append("shape")
    if len(f.dims) != r or len(f.dual) != r or not 0 <= f.unit < r:
        report.fail("shape", "labels, dims, dual and unit disagree in size")
        return report
    for V in idx:
        for W in idx:
            out = f.N.get((V, W))
            if out is None or len(out) != r or any(n < 0 for n in out):
                report.fail("shape", f"N[{V},{W}] missing or malformed")
    if not report.ok:
        return report
    if any(d <= 0 for d in f.dims):
        report.fail("dims", "dimensions must be positive")
    if sorted(f.dual) != list(idx):
        report.fail("dual", "dual is not a permutation")

    report.checked.append("unit")
    for W in idx:
        for U in idx:
            if f.N[f.unit, W][U] != (U == W):
                report.fail("unit", f"N^{U}_(unit,{W}) = {f.N[f.unit, W][U]}")
            if f.N[W, f.unit][U] != (U == W):
                report.fail("unit", f"N^{U}_({W},unit) = {f.N[W, f.unit][U]}")

    report.checked.append("dual")
    for V in idx:
        for W in idx:
            if f.N[V, W][f.unit] != (W == f.dual[V]):
                report.fail("dual", f"N^unit_({V},{W}) = {f.N[V, W][f.unit]}")

    report.checked.append("dimension")
    for V in idx:
        for W in idx:
            lhs = sum(n * d for n, d in zip(f.N[V, W], f.dims))
            if lhs != f.dims[V] * f.dims[W]:
                report.fail("dimension", f"sum_U N^U_({V},{W}) dim U = {lhs}")

    report.checked.append("associativity")
    for V in idx:
        for W in idx:
            vw = f.N[V, W]
            for Y in idx:
                left = f.tensor(vw, f.basis(Y))
                right = f.tensor(f.basis(V), f.N[W, Y])
                if left != right:
                    report.fail("associativity", f"({V}*{W})*{Y} != {V}*({W}*{Y})")

    if f.commutative:
        report.checked.append("commutativity")
        for V in idx:
            for W in idx:
                if f.N[V, W] != f.N[W, V]:
                    report.fail("commutativity", f"N_({V},{W}) != N_({W},{V})")
    return report


def validate_branching(b: BranchingData) -> ValidationReport:
    report = ValidationReport()
    big, small = b.big, b.small
    report.checked.append("shape")
    if len(b.B) != big.rank or any(len(row) != small.rank for row in b.B):
        report.fail("shape", "branching matrix has the wrong shape")
        return report
    if any(m < 0 for row in b.B for m in row):
        report.fail("shape", "negative branching multiplicity")
    report.checked.append("row dimension")
    for V, row in enumerate(b.B):
        d = sum(m * dw for m, dw in zip(row, small.dims))
        if d != big.dims[V]:
            report.fail("row dimension", f"restriction of {V} has dimension {d}")
    report.checked.append("unit row")
    if list(b.B[big.unit]) != small.basis(small.unit):
        report.fail("unit row", "unit does not restrict to the unit")
    report.checked.append("ring map")
    for V in range(big.rank):
        for W in range(big.rank):
            lhs = restrict(b, big.N[V, W])
            rhs = small.tensor(b.B[V], b.B[W])
            if lhs != rhs:
                report.fail("ring map", f"Res({V}*{W}) != Res({V})*Res({W})")
    return report


def frobenius_reciprocity(b: BranchingData) -> bool:
    """<Res e_V, e_W>_H == <e_V, Ind e_W>_G on all basis vectors."""
    for V in range(b.big.rank):
        res = restrict(b, b.big.basis(V))
        for W in range(b.small.rank):
            if res[W] != induce(b, b.small.basis(W))[V]:
                return False
    return True


# -- fusion files ----------------------------------------------------------------


@dataclass
class FusionFile:
    fusion: FusionData
    branching: BranchingData | None
    expected_chain_group: list[int] | None = None
    comment: str = ""
    path: str = ""

    @cached_property
    def pair(self) -> BranchingData:
        """The branching data, with H = G implied when the file has none."""
        return self.branching or identity_branching(self.fusion)


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"{where}: expected an integer, got {value!r}")
    return value


def _int_list(value, where: str) -> list[int]:
    if not isinstance(value, list):
        raise ParseError(f"{where}: expected a list of integers")
    return [_int(v, f"{where}[{k}]") for k, v in enumerate(value)]


def _parse_fusion(obj, where: str) -> FusionData:
    if not isinstance(obj, dict):
        raise ParseError(f"{where}: expected an object")
    for key in ("labels", "dims", "unit", "dual", "tensor"):
        if key not in obj:
            raise ParseError(f"{where}: missing field '{key}'")
    labels = obj["labels"]
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError(f"{where}.labels: expected a list of strings")
    r = len(labels)
    dims = _int_list(obj["dims"], f"{where}.dims")
    unit = _int(obj["unit"], f"{where}.unit")
    dual = _int_list(obj["dual"], f"{where}.dual")
    if len(dims) != r or len(dual) != r:
        raise ParseError(f"{where}: dims and dual must have one entry per label")
    if not 0 <= unit < r or any(not 0 <= d < r for d in dual):
        raise ParseError(f"{where}: unit/dual index out of range")
    N: dict[tuple[int, int], tuple[int, ...]] = {}
    if not isinstance(obj["tensor"], list):
        raise ParseError(f"{where}.tensor: expected a list")
    for k, entry in enumerate(obj["tensor"]):
        at = f"{where}.tensor[{k}]"
        if not isinstance(entry, dict) or not {"v", "w", "out"} <= entry.keys():
            raise ParseError(f"{at}: expected {{v, w, out}}")
        v, w = _int(entry["v"], f"{at}.v"), _int(entry["w"], f"{at}.w")
        out = _int_list(entry["out"], f"{at}.out")
        if not (0 <= v < r and 0 <= w < r) or len(out) != r:
            raise ParseError(f"{at}: index out of range or wrong vector length")
        if (v, w) in N:
            raise ParseError(f"{at}: duplicate pair ({v}, {w})")
        N[v, w] = tuple(out)
    for v in range(r):
        for w in range(r):
            if (v, w) not in N:
                if v == unit:
                    N[v, w] = tuple(int(u == w) for u in range(r))
                elif w == unit:
                    N[v, w] = tuple(int(u == v) for u in range(r))
                else:
                    N[v, w] = (0,) * r
    commutative = all(N[v, w] == N[w, v] for v in range(r) for w in range(r))
    return FusionData(tuple(labels), tuple(dims), unit, tuple(dual), N, commutative)


def _require_valid(report: ValidationReport, what: str) -> None:
    if not report.ok:
        axiom, detail = report.failures[0]
        raise ValidationError(f"{what} violates the {axiom} axiom: {detail}", axiom)


def resolve_fusion_path(path: str | Path) -> Path:
    """Existing paths win; otherwise fall back to the bundled data directory."""
    p = Path(path)
    if p.exists():
        return p
    bundled = DATA_DIR / p.name
    if bundled.exists():
        return bundled
    raise FileNotFoundError(path)


def loads_fusion(text: str, allow_noncommutative: bool = False, path: str = "") -> FusionFile:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    fusion = _parse_fusion(obj, "$")
    _require_valid(validate(fusion), "fusion ring")
    if not fusion.commutative and not allow_noncommutative:
        raise NonCommutativeFusion("fusion ring is not commutative; pass --allow-noncommutative")
    branching = None
    if "branching" in obj:
        br = obj["branching"]
        if not isinstance(br, dict) or "small" not in br or "matrix" not in br:
            raise ParseError("$.branching: expected {small, matrix}")
        small = _parse_fusion(br["small"], "$.branching.small")
        _require_valid(validate(small), "branching.small")
        if not isinstance(br["matrix"], list):
            raise ParseError("$.branching.matrix: expected a list of rows")
        matrix = tuple(
            tuple(_int_list(row, f"$.branching.matrix[{k}]")) for k, row in enumerate(br["matrix"])
        )
        branching = BranchingData(fusion, small, matrix)
        _require_valid(validate_branching(branching), "branching")
    expected = None
    if "expected_chain_group" in obj:
        expected = _int_list(obj["expected_chain_group"], "$.expected_chain_group")
    comment = obj.get("comment", "")
    if not isinstance(comment, str):
        raise ParseError("$.comment: expected a string")
    return FusionFile(fusion, branching, expected, comment, path)


def load_fusion_file(path: str | Path, allow_noncommutative: bool = False) -> FusionFile:
    p = resolve_fusion_path(path)
    return loads_fusion(p.read_text(encoding="utf-8"), allow_noncommutative, str(p))
