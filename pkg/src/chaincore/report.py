"""Report objects shared by the CLI subcommands, with text and JSON renderings."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from typing import Any

from .chain import ChainGroupReport
from .clifford import CliffordReport
from .presentations import Status, Verdict

EXIT_PASS, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    verdicts: list[dict[str, str]] = field(default_factory=list)
    chain: dict[str, Any] | None = None
    clifford: dict[str, Any] | None = None
    timing_ms: int = 0
    summary: dict[str, Any] | None = None

    def add(self, name: str, status: Status | str, detail: str = "") -> None:
        self.verdicts.append({"name": name, "status": str(status), "detail": detail})

    def add_verdict(self, name: str, v: Verdict) -> None:
        self.add(name, v.status, v.detail)

    @property
    def exit_code(self) -> int:
        statuses = {v["status"] for v in self.verdicts}
        if "FAIL" in statuses:
            return EXIT_FAIL
        if statuses - {"PASS"}:
            return EXIT_ERROR
        return EXIT_PASS

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        if d["summary"] is None:
            del d["summary"]
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        lines = [f"chaincore {self.command}"]
        for k, v in self.inputs.items():
            lines.append(f"  {k}: {v}")
        if self.chain is not None:
            c = self.chain
            lines.append(
                f"chain group: {c['generators']} generators, {c['relations']} relations"
            )
            lines.append(f"  invariant factors: {c['invariant_factors']}")
            if c.get("free_rank"):
                lines.append(f"  free rank: {c['free_rank']}")
            lines.append(f"  Todd-Coxeter order: {c['tc_order'] if c['tc_order'] is not None else 'inconclusive'}")
            if c.get("target") is not None:
                lines.append(f"  target invariant factors: {c['target']}")
        if self.clifford is not None:
            cl = self.clifford
            lines.append(f"simH: {_blocks(cl['simH'])}")
            lines.append(f"simB: {_blocks(cl['simB'])}")
            for name, support in cl["const_map"].items():
                lines.append(f"  const({name}) = {{{', '.join(support)}}}")
        if self.summary is not None:
            for key, value in self.summary.items():
                if key != "entries":
                    lines.append(f"{key}: {value}")
            for entry in self.summary.get("entries", []):
                lines.append(
                    f"  {entry['group']:<8} order {entry['order']:>3}  "
                    f"subgroups {entry['subgroups']:>3}  caniso {entry['caniso_pass']}/{entry['subgroups']}  "
                    f"clifford {entry['clifford_pass']}/{entry['normal_subgroups']}  "
                    f"{'ok' if not entry['failures'] else 'FAILURES'}"
                )
        for v in self.verdicts:
            detail = f" ({v['detail']})" if v["detail"] else ""
            lines.append(f"[{v['status']}] {v['name']}{detail}")
        lines.append(f"time: {self.timing_ms} ms")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.to_json() if fmt == "json" else self.to_text()


def _blocks(blocks: list[list[str]]) -> str:
    return "{" + ", ".join("{" + ", ".join(b) + "}" for b in blocks) + "}"


def chain_section(r: ChainGroupReport) -> dict[str, Any]:
    return {
        "generators": r.presentation.ngens,
        "relations": r.relation_count,
        "invariant_factors": list(r.chain_invariants.torsion),
        "free_rank": r.chain_invariants.free_rank,
        "tc_order": r.tc_order,
        "target": list(r.target.invariant_factors) if r.target is not None else None,
        "canonical_images": {
            name: list(img) for name, img in zip(r.labels, r.canonical_images)
        },
    }


def clifford_section(r: CliffordReport, big_labels, small_labels) -> dict[str, Any]:
    return {
        "simH": [[big_labels[v] for v in blk] for blk in r.simH],
        "simB": [[small_labels[w] for w in blk] for blk in r.simB],
        "const_map": {
            big_labels[v]: [small_labels[w] for w in support]
            for v, support in enumerate(r.constMap)
        },
    }
