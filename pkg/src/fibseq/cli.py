"""Workspace-driven command line front end.

Exit codes: 0 when the command succeeded (and any mathematical verdict is
positive), 1 on validation or I/O errors, 2 when a mathematical check came
out negative.  Reports are emitted with sorted keys so identical inputs give
byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional, Sequence

from . import workspace as ws_mod
from .chain import homology_degrees, homology_group, mapping_cone
from .errors import FibseqError
from .exactlin import IntMatrix, snf
from .homset import les_of_fiber_sequence, les_of_map
from .modelcat import is_fibration, is_model_square
from .monoidal import compare_path_functors
from .puppe import (
    LongFiberSequence,
    compare_extensions,
    extend_by_fibrations,
    puppe_sequence,
)
from .workspace import matrix_from_json, matrix_to_json


class _Parser(argparse.ArgumentParser):
    """argparse that reports usage problems as validation errors (exit 1)."""

    def error(self, message):
        raise FibseqError(message)


def emit_report(report: dict, fmt: str = "json") -> str:
    if fmt != "json":
        raise FibseqError(f"unknown report format {fmt!r}")
    return json.dumps(report, sort_keys=True, indent=2)


def _homology_table(cx, parallel: bool = False) -> dict:
    degrees = homology_degrees(cx)
    if parallel and len(degrees) > 1:
        with ThreadPoolExecutor() as pool:
            groups = list(pool.map(lambda n: homology_group(cx, n), degrees))
    else:
        groups = [homology_group(cx, n) for n in degrees]
    return {str(n): g.to_json() for n, g in zip(degrees, groups)}


def _sequence_report(seq: LongFiberSequence, parallel: bool) -> dict:
    nodes = []
    for k, node in enumerate(seq.nodes):
        nodes.append(
            {
                "index": k,
                "ranks": {str(n): r for n, r in node.ranks.items()},
                "homology": _homology_table(node, parallel),
            }
        )
    triples = []
    for k, t in enumerate(seq.triples):
        entry = t.witness.to_json()
        entry.update(
            {
                "index": k,
                "corner_acyclic": t.corner_acyclic,
                "corner_ranks": {str(n): r for n, r in t.corner.ranks.items()},
                "verified": t.verified,
            }
        )
        triples.append(entry)
    return {
        "engine": seq.provenance,
        "functor": seq.functor,
        "variant": seq.variant,
        "depth": len(seq.nodes),
        "nodes": nodes,
        "arrows_are_fibrations": [is_fibration(a) for a in seq.arrows],
        "triples": triples,
        "all_verified": seq.all_verified,
    }


def _cmd_homology(ws, args) -> int:
    cx = ws.complex(args.complex)
    group = homology_group(cx, args.degree)
    print(emit_report(group.to_json()))
    return 0


def _cmd_snf(ws, args) -> int:
    if args.file:
        try:
            with open(args.file, "r", encoding="utf-8") as fh:
                rows = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise FibseqError(f"cannot read matrix file: {exc}")
        m = matrix_from_json(rows, 0, f"matrix file {args.file!r}")
    elif args.complex is not None and args.degree is not None:
        m = ws.complex(args.complex).diff(args.degree)
    else:
        raise FibseqError("snf needs --file or both --complex and --degree")
    dec = snf(m)
    report = {
        "rows": m.rows,
        "cols": m.cols,
        "diagonal": [str(d) for d in dec.diagonal],
    }
    if args.full:
        report["u"] = matrix_to_json(dec.u)
        report["d"] = matrix_to_json(dec.d)
        report["v"] = matrix_to_json(dec.v)
    print(emit_report(report))
    return 0


def _cmd_mapping_cone(ws, args) -> int:
    f = ws.chain_map(args.map)
    cone, _, _ = mapping_cone(f)
    report = {
        "map": args.map,
        "cone": {
            "variant": cone.variant,
            "ranks": {str(n): r for n, r in cone.ranks.items()},
            "diffs": {str(n): matrix_to_json(m) for n, m in cone.diffs.items()},
        },
        "homology": _homology_table(cone),
    }
    print(emit_report(report))
    return 0


def _check_variant(f, requested: Optional[str]) -> None:
    if requested and f.source.variant != requested:
        raise FibseqError(
            f"map lives in the {f.source.variant} variant, not {requested}"
        )


def _cmd_puppe(ws, args) -> int:
    f = ws.chain_map(args.map)
    _check_variant(f, args.variant)
    if args.engine == "efunctor":
        seq = extend_by_fibrations(f, args.depth)
    else:
        seq = puppe_sequence(f, args.depth, functor=args.functor)
    report = _sequence_report(seq, args.parallel)
    report["map"] = args.map
    print(emit_report(report))
    return 0 if seq.all_verified else 2


def _cmd_extend_e(ws, args) -> int:
    f = ws.chain_map(args.map)
    seq = extend_by_fibrations(f, args.depth)
    report = _sequence_report(seq, False)
    report["map"] = args.map
    print(emit_report(report))
    ok = seq.all_verified and all(is_fibration(a) for a in seq.arrows)
    return 0 if ok else 2


def _cmd_les(ws, args) -> int:
    f = ws.chain_map(args.map)
    window = (args.low, args.high)
    if args.engine == "triple":
        seq = puppe_sequence(f, 3)
        report = les_of_fiber_sequence(seq.triples[0], window, names=("K_f", "A", "B"))
    else:
        report = les_of_map(f, window)
    if args.format in ("text", "both"):
        print(report.to_text())
    if args.format in ("json", "both"):
        payload = report.to_json()
        payload["map"] = args.map
        payload["engine"] = args.engine
        print(emit_report(payload))
    return 0 if report.exact else 2


def _cmd_check_square(ws, args) -> int:
    square = ws.square(args.square)
    witness = is_model_square(square)
    from .modelcat import is_acyclic

    report = witness.to_json()
    report.update(
        {
            "square": args.square,
            "corner_acyclic": is_acyclic(square.vertex_c),
            "homotopy_fiber_sequence": report["verdict"]
            and is_acyclic(square.vertex_c),
        }
    )
    print(emit_report(report))
    return 0 if witness.verdict else 2


def _cmd_compare_paths(ws, args) -> int:
    f = ws.chain_map(args.map)
    compare_path_functors(f.source)
    compare_path_functors(f.target)
    pointed = puppe_sequence(f, args.depth, functor="standard")
    homish = puppe_sequence(f, args.depth, functor="monoidal")
    comparison = compare_extensions(pointed, homish)
    report = comparison.to_json()
    report.update(
        {
            "map": args.map,
            "depth": args.depth,
            "towers_verified": pointed.all_verified and homish.all_verified,
        }
    )
    print(emit_report(report))
    return 0 if comparison.all_match and report["towers_verified"] else 2


def build_parser() -> _Parser:
    parser = _Parser(prog="fibseq", description=__doc__)
    parser.add_argument("--workspace", help="path to the workspace JSON file")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("homology", help="homology group of a named complex")
    p.add_argument("--complex", required=True)
    p.add_argument("--degree", type=int, required=True)
    p.set_defaults(func=_cmd_homology, needs_ws=True)

    p = sub.add_parser("snf", help="Smith normal form of a matrix or differential")
    p.add_argument("--file", help="JSON matrix file (rows of decimal integer strings)")
    p.add_argument("--complex")
    p.add_argument("--degree", type=int)
    p.add_argument("--full", action="store_true", help="include U, D, V")
    p.set_defaults(func=_cmd_snf, needs_ws=False)

    p = sub.add_parser("mapping-cone", help="mapping cone of a named map")
    p.add_argument("--map", required=True)
    p.set_defaults(func=_cmd_mapping_cone, needs_ws=True)

    p = sub.add_parser("puppe", help="build and verify a long fiber sequence")
    p.add_argument("--map", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--variant", choices=["unbounded", "nonnegative"])
    p.add_argument("--engine", choices=["puppe", "efunctor"], default="puppe")
    p.add_argument("--functor", choices=["standard", "monoidal"], default="standard")
    p.add_argument("--parallel", action="store_true", help="verify homology tables in a thread pool")
    p.set_defaults(func=_cmd_puppe, needs_ws=True)

    p = sub.add_parser("extend-e", help="fibration tower extending a map")
    p.add_argument("--map", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_extend_e, needs_ws=True)

    p = sub.add_parser("les", help="long exact homology sequence over a window")
    p.add_argument("--map", required=True)
    p.add_argument("--from", dest="low", type=int, required=True)
    p.add_argument("--to", dest="high", type=int, required=True)
    p.add_argument("--engine", choices=["map", "triple"], default="map")
    p.add_argument("--format", choices=["text", "json", "both"], default="both")
    p.set_defaults(func=_cmd_les, needs_ws=True)

    p = sub.add_parser("check-square", help="model-square verdict for a named square")
    p.add_argument("--square", required=True)
    p.set_defaults(func=_cmd_check_square, needs_ws=True)

    p = sub.add_parser("compare-paths", help="compare the two path functors on a map")
    p.add_argument("--map", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.set_defaults(func=_cmd_compare_paths, needs_ws=True)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        ws = None
        if args.needs_ws:
            if not args.workspace:
                raise FibseqError(f"{args.command} needs --workspace")
            ws = ws_mod.load(args.workspace)
        elif args.workspace:
            ws = ws_mod.load(args.workspace)
        return args.func(ws, args)
    except FibseqError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def console_main() -> None:
    sys.exit(main())


if __name__ == "__main__":
    console_main()
