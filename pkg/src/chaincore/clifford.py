"""Clifford-theory equivalence relations for a normal subgroup.

``simH`` partitions the irreps of G by the support of their restriction to
H; ``simB`` partitions the irreps of H into those supports.  Both are built
from supports, so the equivalences that hold for normal H (overlapping
supports coincide, supports tile the irreps of H, the permutation-module
embedding criterion) can be checked on the data rather than assumed.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import TheoremViolation, UncoveredIrrep
from .fusion import BranchingData, FusionData, induce

Partition = list[list[int]]


@dataclass
class CliffordReport:
    simH: Partition
    simB: Partition
    constMap: list[list[int]]
    checks: dict[str, bool] = field(default_factory=dict)
    details: dict[str, str] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(self.checks.values())

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks[name] = ok
        if detail:
            self.details[name] = detail


def const_support(b: BranchingData, V: int) -> frozenset[int]:
    return frozenset(W for W, m in enumerate(b.B[V]) if m > 0)


def _fibers(b: BranchingData) -> Partition:
    blocks: dict[frozenset[int], list[int]] = {}
    for V in range(b.big.rank):
        blocks.setdefault(const_support(b, V), []).append(V)
    return sorted(blocks.values())


def _overlap_violations(b: BranchingData) -> list[tuple[int, int]]:
    supports = [const_support(b, V) for V in range(b.big.rank)]
    return [
        (V, W)
        for V in range(len(supports))
        for W in range(V + 1, len(supports))
        if supports[V] & supports[W] and supports[V] != supports[W]
    ]


def sim_H_partition(b: BranchingData) -> Partition:
    bad = _overlap_violations(b)
    if bad:
        V, W = bad[0]
        raise TheoremViolation(
            f"{b.big.labels[V]} and {b.big.labels[W]} share a constituent over H "
            "but have different supports"
        )
    return _fibers(b)


def sim_B_partition(b: BranchingData) -> Partition:
    supports = {const_support(b, V) for V in range(b.big.rank)}
    covered = set().union(*supports)
    missing = sorted(set(range(b.small.rank)) - covered)
    if missing:
        raise UncoveredIrrep(
            f"{b.small.labels[missing[0]]} occurs in no restriction"
        )
    blocks = sorted(sorted(s) for s in supports)
    flat = [W for blk in blocks for W in blk]
    if len(flat) != len(set(flat)):
        raise TheoremViolation("constituent sets overlap without coinciding")
    return blocks


def permutation_module(b: BranchingData) -> list[int]:
    """Functions on G/H as a multiplicity vector over the irreps of G."""
    return induce(b, b.small.basis(b.small.unit))


def embedding_criterion(b: BranchingData, fG: FusionData, V: int, W: int) -> bool:
    """Does V embed into W (x) Ind(1_H)?  Checked against support equality."""
    embeds = fG.tensor(fG.basis(W), permutation_module(b))[V] > 0
    same = const_support(b, V) == const_support(b, W)
    if embeds != same:
        raise TheoremViolation(
            f"embedding criterion ({embeds}) disagrees with support equality ({same}) "
            f"for {fG.labels[V]}, {fG.labels[W]}"
        )
    return embeds


def verify_partition_duality(b: BranchingData, fG: FusionData | None = None) -> CliffordReport:
    """Check that const() maps onto the simB blocks with the simH blocks as fibers.

    Failures are recorded in the report, never raised.  With ``fG`` the
    embedding criterion is also compared against support equality on every pair.
    """
    const_map = [sorted(const_support(b, V)) for V in range(b.big.rank)]
    fibers = _fibers(b)
    report = CliffordReport(simH=fibers, simB=[], constMap=const_map)

    bad = _overlap_violations(b)
    report.record(
        "overlap implies equal support",
        not bad,
        "; ".join(f"{b.big.labels[v]}~{b.big.labels[w]}" for v, w in bad),
    )
    try:
        report.simH = sim_H_partition(b)
    except TheoremViolation as exc:
        report.details.setdefault("simH", str(exc))
    try:
        report.simB = sim_B_partition(b)
        ranges = sorted({tuple(c) for c in const_map})
        report.record("range of const is simB", ranges == [tuple(x) for x in report.simB])
    except (TheoremViolation, UncoveredIrrep) as exc:
        report.simB = sorted(sorted(s) for s in {tuple(c) for c in const_map})
        report.record("range of const is simB", False, str(exc))

    by_support: dict[tuple[int, ...], list[int]] = {}
    for V, c in enumerate(const_map):
        by_support.setdefault(tuple(c), []).append(V)
    report.record("fibers of const are simH", sorted(by_support.values()) == report.simH)

    # |const(V)| <= dim V bounds every simB block
    report.record(
        "blocks finite",
        all(0 < len(c) <= d for c, d in zip(const_map, b.big.dims)),
    )

    if fG is not None:
        mismatches = []
        for V in range(b.big.rank):
            for W in range(b.big.rank):
                try:
                    embedding_criterion(b, fG, V, W)
                except TheoremViolation:
                    mismatches.append(f"{fG.labels[V]},{fG.labels[W]}")
        report.record("embedding criterion", not mismatches, "; ".join(mismatches[:5]))
    return report
