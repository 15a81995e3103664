"""Command-line front end.

Exit codes: 0 when everything checked out, 1 when a computed value differs
from the expected one, 2 for usage or input/output errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from . import __version__

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    case_id: str | None = None
    threads: int = 1
    output_dir: Path | None = None
    format: str = "text"

    def validate(self) -> None:
        if self.threads < 1:
            raise UsageError("--threads must be at least 1")
        if self.output_dir is not None:
            try:
                self.output_dir.mkdir(parents=True, exist_ok=True)
            except OSError as exc:
                raise UsageError(f"cannot create {self.output_dir}: {exc.strerror}") from None
            if not os.access(self.output_dir, os.W_OK):
                raise UsageError(f"{self.output_dir} is not writable")


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cayley-census",
                                description="Tetravalent 2-arc-transitive Cayley graphs on simple groups.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", metavar="COMMAND")

    c = sub.add_parser("classify", help="run the census cases")
    which = c.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true", help="every case plus the cross checks")
    which.add_argument("--case", metavar="ID", help="a single case (see --list)")
    which.add_argument("--list", action="store_true", help="list case ids")
    c.add_argument("--threads", type=int, default=1, help="worker processes (default 1)")
    c.add_argument("--format", choices=("text", "json"), default="text", help="stdout format")
    c.add_argument("--out", metavar="FILE", help="write the JSON report here")
    c.add_argument("--output-dir", metavar="DIR", help="write report.json and graph edge lists here")

    b = sub.add_parser("build-graph", help="write the coset graph for one Delta orbit")
    b.add_argument("--delta", type=int, choices=(1, 2), required=True)
    b.add_argument("--out", metavar="FILE", required=True)

    a = sub.add_parser("analyze", help="certify a graph from an edge-list file")
    a.add_argument("--graph", metavar="FILE", required=True)
    a.add_argument("--group", metavar="FILE", help="generator file of a group acting on the vertices")
    a.add_argument("--expect", metavar="KEY=VALUE", action="append", default=[],
                   help="required value, e.g. aut_order=190080 (repeatable)")
    a.add_argument("--format", choices=("text", "json"), default="text")

    sub.add_parser("catalog", help="list and validate the shipped groups")

    k = sub.add_parser("check", help="re-verify the witnesses stored in a JSON report")
    k.add_argument("--report", metavar="FILE", required=True)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:          # argparse prints its own message
        return EXIT_USAGE if exc.code else EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    try:
        return _dispatch(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def cmd_dispatch(argv: Sequence[str]) -> int:
    return main(argv)


def _dispatch(args) -> int:
    from .graphs import GraphFormatError
    from .groupdata import GroupDataError
    try:
        if args.command == "classify":
            return _classify(args)
        if args.command == "build-graph":
            return _build_graph(args)
        if args.command == "analyze":
            return _analyze(args)
        if args.command == "catalog":
            return _catalog()
        if args.command == "check":
            return _check(args)
    except (GraphFormatError, GroupDataError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    raise UsageError(f"unknown command {args.command}")


def _write(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")


def _classify(args) -> int:
    from . import classify as cl
    if args.list:
        for c in cl.CASES:
            print(f"{c.case_id:20s} {c.mode:20s} expect {c.expect}")
        return EXIT_OK
    cfg = RunConfig("classify", args.case, args.threads,
                    Path(args.output_dir) if args.output_dir else None, args.format)
    cfg.validate()
    if args.case:
        try:
            case = cl.get_case(args.case)
        except KeyError as exc:
            raise UsageError(str(exc.args[0])) from None
        res = cl.run_case(case)
        report = {"schema": cl.SCHEMA, "cases": [res.report]}
        ok = res.report["verdict"] == case.expect
        summary = f"case {case.case_id}: verdict {res.report['verdict']} (expected {case.expect})"
        graphs = res.graphs
    else:
        report = cl.run_all(threads=cfg.threads)
        ok = report["summary"]["all_claims_reproduced"]
        summary = report["summary"]["line"]
        main_case = cl.run_case("M12:2/M11/S4") if cfg.output_dir else None
        graphs = main_case.graphs if main_case else []
    text = cl.dumps_report(report)
    if args.out:
        _write(args.out, text)
    if cfg.output_dir:
        _write(cfg.output_dir / "report.json", text)
        from .graphs import write_edge_list
        for b in graphs:
            write_edge_list(b.coset.graph, cfg.output_dir / f"{b.record['label']}.edges")
    if cfg.format == "json":
        sys.stdout.write(text)
    else:
        for c in report.get("claims", []):
            mark = "ok  " if c["reproduced"] else "FAIL"
            print(f"{mark} {c['id']:28s} [{c['label']}] expected {_short(c['expected'])}, "
                  f"observed {_short(c['observed'])}")
        print(summary)
    return EXIT_OK if ok else EXIT_MISMATCH


def _short(v) -> str:
    s = json.dumps(v)
    return s if len(s) <= 60 else s[:57] + "..."


def _build_graph(args) -> int:
    from . import classify as cl
    from .graphs import coset_graph, write_edge_list
    res = cl.run_case("M12:2/M11/S4", build_graphs=False)
    if len(res.orbits) < args.delta:
        print(f"error: only {len(res.orbits)} Delta orbits", file=sys.stderr)
        return EXIT_MISMATCH
    A = cl.resolve_group("M12.2.deg24")
    cg = coset_graph(A, res.K, res.orbits[args.delta - 1].representative)
    write_edge_list(cg.graph, args.out)
    print(f"wrote {args.out}: graph {cg.graph.n} {cg.graph.edge_count}")
    return EXIT_OK


def analyze_graph(graph, group=None) -> dict:
    """Valency, connectivity, invariants, automorphism group order and s-transitivity."""
    from . import arctrans, autiso
    from .graphs import GroupAction, is_connected
    aut = autiso.automorphism_group(graph)
    aut_action = GroupAction(None, [p.array for p in aut.generators])
    out = {
        "vertices": graph.n,
        "edges": graph.edge_count,
        "valency": graph.valency(),
        "connected": is_connected(graph),
        "invariants": autiso.invariant_signature(graph).as_dict(),
        "aut_order": aut.order,
        "s_transitivity": arctrans.s_transitivity(graph, aut_action) if graph.edge_count else 0,
        "canonical_hash": autiso.canonical_form(graph).certificate_hash,
    }
    if group is not None:
        act = GroupAction(group, [g.array for g in group.generators])
        out["group_order"] = group.order()
        out["group_arc_orbits"] = arctrans.arc_profile(graph, act).orbit_counts
        out["group_s_transitivity"] = arctrans.s_transitivity(graph, act)
    return out


def _parse_expect(items: list[str]) -> dict[str, str]:
    out = {}
    for it in items:
        if "=" not in it:
            raise UsageError(f"--expect needs KEY=VALUE, got {it!r}")
        k, v = it.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _analyze(args) -> int:
    from .arctrans import NotAnAutomorphism
    from .graphs import read_edge_list
    from .groupdata import load_user_group
    expect = _parse_expect(args.expect)
    graph = read_edge_list(args.graph)
    group = None
    if args.group:
        spec = load_user_group(args.group)
        if spec.degree != graph.n:
            raise UsageError(f"group degree {spec.degree} but graph has {graph.n} vertices")
        group = spec.group
    try:
        res = analyze_graph(graph, group)
    except NotAnAutomorphism as exc:
        print(f"group does not act by automorphisms: {exc}", file=sys.stderr)
        return EXIT_MISMATCH
    for key in expect:
        if key not in res:
            raise UsageError(f"unknown --expect key {key!r}; known: {', '.join(sorted(res))}")
    bad = {k: (v, res[k]) for k, v in expect.items() if json.dumps(res[k]) != v and str(res[k]) != v}
    if args.format == "json":
        sys.stdout.write(json.dumps(res, indent=1) + "\n")
    else:
        for k, v in res.items():
            print(f"{k}: {json.dumps(v)}")
    for k, (want, got) in bad.items():
        print(f"MISMATCH {k}: expected {want}, got {json.dumps(got)}", file=sys.stderr)
    return EXIT_MISMATCH if bad else EXIT_OK


def _catalog() -> int:
    from .groupdata import catalog, validate_catalog
    orders = validate_catalog()
    for name, degree, order in catalog():
        flag = "ok" if orders[name] == order else "MISMATCH"
        print(f"{name:14s} degree {degree:3d} order {order:>10d} {flag}")
    return EXIT_OK if all(orders[n] == o for n, _, o in catalog()) else EXIT_MISMATCH


def _check(args) -> int:
    from .classify import check_report
    try:
        report = json.loads(Path(args.report).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise UsageError(f"{args.report}: not JSON ({exc.msg} at line {exc.lineno})") from None
    problems = check_report(report)
    for p in problems:
        print(f"problem: {p}")
    print(f"{len(problems)} problem(s)")
    return EXIT_MISMATCH if problems else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
