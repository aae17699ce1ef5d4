"""Command-line interface: build/describe rings, classify submodules, run
the theorem suite, and mine for separating examples.

Exit codes: 0 success or suite verified; 1 an exhaustive check found a
counterexample; 2 usage or configuration error; 3 a size cap was exceeded.
Diagnostics (including the effective-configuration echo) go to stderr;
machine-readable results go to stdout or the requested output file.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import (Catalog, DEFAULT_CAPS, Workspace, classification_report_doc,
                      default_catalog, dump_report, load_catalog, parse_catalog)
from .classify import classify_submodule
from .errors import CapExceededError, CatalogError, ModlabError, SpecError
from .rings import build_ring, is_u_ring, jacobson_radical
from .theorems import MINER_PATTERNS, REGISTRY, mine, run_suite

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


def _echo_config(args, caps: dict) -> None:
    parts = [f"modlab {__version__}", "randomness: none (fully deterministic)"]
    parts += [f"cap.{k}={v}" for k, v in sorted(caps.items())]
    for key in ("suite", "jobs", "pattern", "max_ring", "max_module", "limit",
                "format", "show"):
        if hasattr(args, key) and getattr(args, key) is not None:
            parts.append(f"{key}={getattr(args, key)}")
    print("[config] " + " ".join(parts), file=sys.stderr)


def _load(path: str) -> Catalog:
    if path == "default":
        return default_catalog()
    return load_catalog(path)


def _cmd_ring(args) -> int:
    try:
        node = json.loads(args.spec)
    except json.JSONDecodeError as exc:
        print(f"error: bad ring spec JSON: {exc}", file=sys.stderr)
        return EXIT_USAGE
    catalog = parse_catalog(json.dumps({"rings": {"r": node}}))
    _echo_config(args, catalog.caps)
    ring = build_ring(catalog.rings["r"], catalog.caps["ring_size"])
    out: dict = {"ring": ring.describe(), "size": ring.size}
    if args.show == "units":
        out["units"] = [int(u) for u in ring.unit_elements()]
        out["units_rendered"] = [ring.render_element(int(u)) for u in ring.unit_elements()]
    elif args.show == "ideals":
        out["ideals"] = [
            {"generators": [int(g) for g in ideal.generators],
             "size": ideal.size,
             "elements": [int(x) for x in ideal.elements()]}
            for ideal in ring.ideal_lattice()]
    elif args.show == "jacobson":
        jac = jacobson_radical(ring)
        out["jacobson"] = {"size": jac.size, "elements": [int(x) for x in jac.elements()]}
    elif args.show == "u-ring":
        verdict = is_u_ring(ring)
        out["u_ring"] = verdict.holds
        if not verdict.holds:
            out["witness_ideal"] = [int(x) for x in verdict.witness_ideal.elements()]
            out["covering_family"] = [[int(x) for x in J.elements()]
                                      for J in verdict.covering_family]
    print(json.dumps(out, sort_keys=True, indent=1))
    return EXIT_OK


def _classify_one(ws: Workspace, sid: str, digest: str) -> dict:
    N = ws.submodule(sid)
    report = classify_submodule(N)
    doc = classification_report_doc(report, digest)
    doc["submodule_id"] = sid
    return doc


def _render_table(doc: dict) -> str:
    lines = [f"module: {doc['module']}",
             f"submodule: generators={doc['submodule']['generators']} "
             f"size={doc['submodule']['size']}"]
    for entry in doc["predicates"]:
        holds = "yes" if entry["holds"] else "no"
        witness = ""
        if "witness" in entry:
            witness = f"  witness {entry['witness']} ({entry['witness_rendered']})"
        lines.append(f"  {entry['predicate']:<24} {holds}{witness}")
    if doc["quadruple_zeros"]:
        lines.append(f"  quadruple zeros (first {len(doc['quadruple_zeros'])}): "
                     f"{doc['quadruple_zeros']}")
    return "\n".join(lines)


def _cmd_classify(args) -> int:
    catalog = _load(args.catalog)
    _echo_config(args, catalog.caps)
    ws = Workspace(catalog)
    digest = catalog.digest()
    docs: list[dict] = []
    if args.submodule:
        docs.append(_classify_one(ws, args.submodule, digest))
    else:
        if not args.all:
            print("error: need --submodule ID or --module ID --all", file=sys.stderr)
            return EXIT_USAGE
        mid = args.module
        ws.module(mid)
        subs, complete = ws.submodules_for(mid)
        if not complete:
            print(f"note: lattice over cap; classifying targeted submodules only",
                  file=sys.stderr)
        for name, N in subs:
            report = classify_submodule(N)
            doc = classification_report_doc(report, digest)
            doc["submodule_id"] = f"{mid}/{name}"
            docs.append(doc)
    if args.format == "json":
        payload = docs[0] if len(docs) == 1 else {
            "schema_version": 1, "catalog_digest": digest, "reports": docs}
        text = dump_report(payload, args.out)
        if args.out is None:
            print(text)
    else:
        text = "\n\n".join(_render_table(d) for d in docs)
        if args.out is not None:
            Path(args.out).write_text(text + "\n", encoding="utf-8")
        else:
            print(text)
    return EXIT_OK


def _cmd_verify(args) -> int:
    catalog = _load(args.catalog)
    _echo_config(args, catalog.caps)
    ws = Workspace(catalog)
    selection = None
    if args.suite not in (None, "all"):
        selection = [s.strip() for s in args.suite.split(",") if s.strip()]
        unknown = [s for s in selection if s not in REGISTRY]
        if unknown:
            print(f"error: unknown checks {', '.join(unknown)}", file=sys.stderr)
            return EXIT_USAGE
    suite = run_suite(ws, selection, jobs=args.jobs)
    for cid in sorted(suite.checks):
        check = suite.checks[cid]
        extra = ""
        if check.findings:
            extra += f" findings={len(check.findings)}"
        if check.skipped:
            extra += f" skipped={len(check.skipped)}"
        print(f"{cid} [{check.mode:<11}] {check.status:<22} "
              f"instances={check.qualifying_instances}{extra}")
    if args.report:
        dump_report(suite.doc(), args.report)
        print(f"report written to {args.report}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if suite.exit_status() else EXIT_OK


def _cmd_mine(args) -> int:
    _echo_config(args, dict(DEFAULT_CAPS))
    findings = mine(args.pattern, args.max_ring, args.max_module, args.limit)
    print(json.dumps({"pattern": args.pattern, "findings": findings},
                     sort_keys=True, indent=1))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modlab",
        description="classify prime-like submodules of finite modules and "
                    "verify the classification theorems on finite instances")
    sub = parser.add_subparsers(dest="command", required=True)

    p_ring = sub.add_parser("ring", help="build a ring and describe it")
    p_ring.add_argument("--spec", required=True, help="inline ring spec JSON")
    p_ring.add_argument("--show", required=True,
                        choices=["units", "ideals", "jacobson", "u-ring"])
    p_ring.set_defaults(func=_cmd_ring)

    p_cls = sub.add_parser("classify", help="classify catalog submodules")
    p_cls.add_argument("--catalog", required=True,
                       help="catalog file path or 'default'")
    p_cls.add_argument("--submodule", help="submodule id to classify")
    p_cls.add_argument("--module", help="module id (with --all)")
    p_cls.add_argument("--all", action="store_true",
                       help="classify every available proper submodule")
    p_cls.add_argument("--format", choices=["table", "json"], default="table")
    p_cls.add_argument("--out", help="write the result to this file")
    p_cls.set_defaults(func=_cmd_classify)

    p_ver = sub.add_parser("verify", help="run the theorem suite")
    p_ver.add_argument("--catalog", required=True)
    p_ver.add_argument("--suite", default="all",
                       help="'all' or comma-separated check ids (T01,..)")
    p_ver.add_argument("--jobs", type=int, default=1)
    p_ver.add_argument("--report", help="write the suite report JSON here")
    p_ver.set_defaults(func=_cmd_verify)

    p_mine = sub.add_parser("mine", help="search for separating examples")
    p_mine.add_argument("--pattern", required=True, choices=list(MINER_PATTERNS))
    p_mine.add_argument("--max-ring", type=int, required=True, dest="max_ring")
    p_mine.add_argument("--max-module", type=int, default=256, dest="max_module")
    p_mine.add_argument("--limit", type=int, default=16)
    p_mine.set_defaults(func=_cmd_mine)
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (CatalogError, SpecError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ModlabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    raise SystemExit(run_cli())


if __name__ == "__main__":
    main()
