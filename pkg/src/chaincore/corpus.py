"""Corpus sweep: every subgroup of every listed group through every check."""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .chain import GroupContext, verify_caniso, verify_iso_theorem
from .clifford import verify_partition_duality
from .errors import ChaincoreError
from .fusion import DATA_DIR, frobenius_reciprocity, validate, validate_branching
from .groups import DEFAULT_CAP, is_normal, subgroup_lattice
from .presentations import DEFAULT_LIMIT, Status
from .specs import parse_group_spec

DEFAULT_MANIFEST = DATA_DIR / "default_corpus.txt"


def read_manifest(path: str | Path | None = None) -> list[str]:
    """Group specs from a manifest: a JSON list, or one spec per line (``#`` comments)."""
    p = Path(path) if path is not None else DEFAULT_MANIFEST
    text = p.read_text(encoding="utf-8")
    if text.lstrip().startswith("["):
        specs = json.loads(text)
        if not all(isinstance(s, str) for s in specs):
            raise ValueError("JSON manifest must be a list of group specs")
        return specs
    specs = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            specs.append(line)
    return specs


def run_entry(spec: str, cap: int = DEFAULT_CAP, limit: int = DEFAULT_LIMIT) -> dict:
    entry = {
        "group": spec,
        "order": 0,
        "prime": 0,
        "subgroups": 0,
        "caniso_pass": 0,
        "caniso_inconclusive": 0,
        "normal_subgroups": 0,
        "clifford_pass": 0,
        "iso_theorem_pass": 0,
        "frobenius_pass": 0,
        "branching_valid": 0,
        "character_table": False,
        "fusion_valid": False,
        "failures": [],
    }
    failures = entry["failures"]
    try:
        G = parse_group_spec(spec, cap=cap)
        ctx = GroupContext(G)
    except ChaincoreError as exc:
        failures.append(f"setup: {exc}")
        return entry
    t = ctx.table
    entry["order"] = G.order
    entry["prime"] = ctx.p
    entry["character_table"] = (
        t.row_orthogonality()
        and t.column_orthogonality()
        and sum(d * d for d in t.degrees) == G.order
    )
    if not entry["character_table"]:
        failures.append("character table checks")
    report = validate(ctx.fusion)
    entry["fusion_valid"] = report.ok
    if not report.ok:
        failures.append(f"fusion axioms: {report.axioms_failed()}")

    lattice = subgroup_lattice(G)
    entry["subgroups"] = len(lattice)
    for H in lattice:
        tag = f"H={[G.labels[h] for h in H.elements]}"
        b = ctx.branching(H)
        if frobenius_reciprocity(b):
            entry["frobenius_pass"] += 1
        else:
            failures.append(f"frobenius {tag}")
        if validate_branching(b).ok:
            entry["branching_valid"] += 1
        else:
            failures.append(f"branching {tag}")
        r = verify_caniso(G, H, context=ctx, limit=limit)
        if r.status is Status.PASS:
            entry["caniso_pass"] += 1
        elif r.status is Status.INCONCLUSIVE:
            entry["caniso_inconclusive"] += 1
        else:
            bad = [k for k, v in r.verdicts.items() if v.status is not Status.PASS]
            failures.append(f"caniso {tag}: {bad}")
        if verify_iso_theorem(G, H).passed:
            entry["iso_theorem_pass"] += 1
        else:
            failures.append(f"iso theorem {tag}")
        if is_normal(G, H):
            entry["normal_subgroups"] += 1
            cl = verify_partition_duality(b, ctx.fusion)
            if cl.passed:
                entry["clifford_pass"] += 1
            else:
                failures.append(f"clifford {tag}: {cl.details}")
    return entry


def default_workers() -> int:
    return max(1, int(os.environ.get("CHAINCORE_WORKERS", "1")))


def run_corpus(
    specs: list[str],
    cap: int = DEFAULT_CAP,
    limit: int = DEFAULT_LIMIT,
    workers: int | None = None,
) -> list[dict]:
    workers = default_workers() if workers is None else workers
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            entries = list(pool.map(run_entry, specs, [cap] * len(specs), [limit] * len(specs)))
    else:
        entries = [run_entry(s, cap, limit) for s in specs]
    return sorted(entries, key=lambda e: e["group"])
