"""``chaincore`` command line.

Exit codes: 0 when every verdict passes, 1 when a check fails, 2 for bad
input, limits, or inconclusive enumeration.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass, field

from .chain import GroupContext, chain_report_from_fusion, verify_caniso, verify_chain_functoriality, verify_iso_theorem
from .clifford import verify_partition_duality
from .corpus import read_manifest, run_corpus
from .errors import ChaincoreError, NotNormal, ValidationError
from .fusion import load_fusion_file, validate, validate_branching
from .groups import DEFAULT_CAP, is_normal, subgroup_lattice
from .presentations import DEFAULT_LIMIT, Status
from .report import EXIT_ERROR, Report, chain_section, clifford_section
from .specs import parse_group_spec, parse_subgroup_spec

COMMANDS = ("chain", "clifford", "fusion", "corpus", "group")


@dataclass
class RunConfig:
    command: str
    group: str | None = None
    subgroups: list[str] = field(default_factory=list)
    prime: int | None = None
    limit: int = DEFAULT_LIMIT
    cap: int = DEFAULT_CAP
    format: str = "text"
    manifest: str | None = None
    allow_noncommutative: bool = False
    force: bool = False
    path: str | None = None

    def __post_init__(self):
        if self.limit < 1 or self.cap < 1:
            raise ValueError("limit and cap must be positive")
        if self.format not in ("text", "json"):
            raise ValueError("format must be 'text' or 'json'")


def _context(cfg: RunConfig):
    if not cfg.group:
        raise ChaincoreError("--group is required")
    G = parse_group_spec(cfg.group, cap=cfg.cap)
    return G, GroupContext(G, cfg.prime)


def run_chaingroup(cfg: RunConfig) -> Report:
    G, ctx = _context(cfg)
    specs = cfg.subgroups or ["full"]
    H = parse_subgroup_spec(G, specs[0])
    report = Report("chain", {"group": cfg.group, "subgroup": specs[0], "prime": ctx.p})
    r = verify_caniso(G, H, context=ctx, limit=cfg.limit)
    for name, v in r.verdicts.items():
        report.add_verdict(name, v)
    report.add_verdict("isomorphism theorem", verify_iso_theorem(G, H))
    report.chain = chain_section(r)
    if len(specs) > 1:
        # second subgroup: functoriality between the two relative chain groups
        K2 = parse_subgroup_spec(G, specs[1])
        K, Hbig = (H, K2) if H.element_set <= K2.element_set else (K2, H)
        if not K.element_set <= Hbig.element_set:
            raise ChaincoreError("functoriality needs nested subgroups")
        f = verify_chain_functoriality(G, K, Hbig, context=ctx)
        report.inputs["functoriality"] = f"K={len(K)} <= H={len(Hbig)}"
        report.add_verdict("functoriality", f.verdict())
    return report


def run_clifford(cfg: RunConfig) -> Report:
    G, ctx = _context(cfg)
    spec = cfg.subgroups[0] if cfg.subgroups else "full"
    H = parse_subgroup_spec(G, spec)
    normal = is_normal(G, H)
    if not normal and not cfg.force:
        raise NotNormal(f"subgroup {spec} is not normal in {cfg.group} (use --force to inspect anyway)")
    b = ctx.branching(H)
    cr = verify_partition_duality(b, ctx.fusion)
    report = Report("clifford", {"group": cfg.group, "subgroup": spec, "normal": normal, "prime": ctx.p})
    for name, ok in cr.checks.items():
        report.add(name, Status.PASS if ok else Status.FAIL, cr.details.get(name, ""))
    report.clifford = clifford_section(cr, b.big.labels, b.small.labels)
    return report


def run_fusion(cfg: RunConfig) -> Report:
    ff = load_fusion_file(cfg.path, allow_noncommutative=cfg.allow_noncommutative)
    report = Report(
        "fusion",
        {"path": cfg.path, "objects": len(ff.fusion.labels), "dims": list(ff.fusion.dims)},
    )
    v = validate(ff.fusion)
    report.add("fusion axioms", Status.PASS if v.ok else Status.FAIL, str(v))
    if ff.branching is not None:
        vb = validate_branching(ff.branching)
        report.add("branching axioms", Status.PASS if vb.ok else Status.FAIL, str(vb))
    r = chain_report_from_fusion(ff, allow_noncommutative=cfg.allow_noncommutative, limit=cfg.limit)
    for name, verdict in r.verdicts.items():
        report.add_verdict(name, verdict)
    report.chain = chain_section(r)
    report.chain["expected"] = ff.expected_chain_group
    if not ff.fusion.commutative:
        report.inputs["note"] = "non-commutative fusion: invariants only, no isomorphism verdict"
    return report


def run_corpus_cmd(cfg: RunConfig) -> Report:
    specs = read_manifest(cfg.manifest)
    entries = run_corpus(specs, cap=cfg.cap, limit=cfg.limit)
    report = Report("corpus", {"manifest": cfg.manifest or "default", "groups": len(specs)})
    totals = {
        key: sum(e[key] for e in entries)
        for key in ("subgroups", "caniso_pass", "normal_subgroups", "clifford_pass", "iso_theorem_pass")
    }
    report.summary = {"entries": entries, **totals}
    for e in entries:
        status = Status.PASS
        if e["failures"]:
            status = Status.FAIL
        elif e["caniso_inconclusive"]:
            status = Status.INCONCLUSIVE
        report.add(e["group"], status, "; ".join(e["failures"][:3]))
    return report


def run_group(cfg: RunConfig) -> Report:
    G, ctx = _context(cfg)
    t = ctx.table
    report = Report("group", {"group": cfg.group})
    report.summary = {
        "order": G.order,
        "exponent": G.exponent,
        "prime": t.p,
        "class_sizes": list(t.class_sizes),
        "degrees": list(t.degrees),
        "irreps": list(ctx.fusion.labels),
        "center_order": ctx.center.order,
        "subgroups": len(subgroup_lattice(G)),
    }
    report.add("row orthogonality", Status.PASS if t.row_orthogonality() else Status.FAIL)
    report.add("column orthogonality", Status.PASS if t.column_orthogonality() else Status.FAIL)
    report.add("fusion axioms", Status.PASS if validate(ctx.fusion).ok else Status.FAIL)
    return report


HANDLERS = {
    "chain": run_chaingroup,
    "clifford": run_clifford,
    "fusion": run_fusion,
    "corpus": run_corpus_cmd,
    "group": run_group,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaincore",
        description="Relative chain groups, relative centers and Clifford relations for finite groups.",
    )
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("path", nargs="?", help="fusion file (fusion command)")
    parser.add_argument("--group", help="group spec, e.g. S3, Q8, C2xC4, perm:[(0 1),(0 1 2)]")
    parser.add_argument(
        "--subgroup", action="append", default=[], dest="subgroups",
        help="gen:[...], center, derived, trivial or full; repeat for functoriality",
    )
    parser.add_argument("--format", choices=("text", "json"), default="text")
    parser.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="Todd-Coxeter coset limit")
    parser.add_argument("--cap", type=int, default=DEFAULT_CAP, help="group order cap")
    parser.add_argument("--prime", type=int, help="override the Dixon prime")
    parser.add_argument("--allow-noncommutative", action="store_true")
    parser.add_argument("--force", action="store_true", help="run clifford on a non-normal subgroup")
    parser.add_argument("--manifest", help="corpus manifest (default: bundled corpus)")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if cfg.command == "fusion" and not cfg.path:
        print("error: fusion needs a file path", file=sys.stderr)
        return EXIT_ERROR
    start = time.perf_counter()
    try:
        report = HANDLERS[cfg.command](cfg)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except (ChaincoreError, FileNotFoundError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report.timing_ms = round((time.perf_counter() - start) * 1000)
    print(report.render(cfg.format))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
