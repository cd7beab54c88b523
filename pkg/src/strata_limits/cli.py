"""Command-line interface.

Subcommands:

- ``validate``: check an action file (and optionally a multicurve file).
- ``build``: construct the limit stable graph from an action and a
  multicurve file and print it as text, DOT or JSON.
- ``pyramid classify`` / ``pyramid build``: the dihedral pyramid family.
- ``dim``: dimension of a boundary stratum from a signature and a number
  of pinched curves.

Exit codes: 0 success, 1 usage or parse error, 2 validation failure,
3 internal audit failure.  Results go to stdout, diagnostics to stderr.
The environment variable ``STRATA_LIMITS_THREADS`` sets the worker count
used by ``pyramid classify``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .files import SpecFormatError, load_action, load_multicurve
from .groups import Subgroup
from .limit_graphs import AuditError, LabeledStratumGraph, build_stratum_graph
from .multicurves import (
    MulticurveSpec,
    curve_image_subgroup,
    piece_image_subgroup,
    validate_multicurve,
)
from .orbifolds import (
    NoSuchStratumError,
    OrbifoldSignature,
    SurfaceKernelAction,
    stratum_dimension,
    validate_action,
)
from .oracle import audit_graph
from .pyramids import (
    FAMILIES,
    PyramidMulticurveParams,
    VARIANTS,
    classify,
    make_multicurve,
    pyramid_action,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_AUDIT = 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="strata-limits", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    validate = sub.add_parser("validate", help="validate an action (and multicurve) file")
    validate.add_argument("--action", required=True, metavar="FILE")
    validate.add_argument("--multicurve", metavar="FILE")

    build = sub.add_parser("build", help="build the limit stable graph from files")
    build.add_argument("--action", required=True, metavar="FILE")
    build.add_argument("--multicurve", required=True, metavar="FILE")
    build.add_argument("--format", choices=("text", "dot", "json"), default="text")
    audit = build.add_mutually_exclusive_group()
    audit.add_argument("--audit", dest="audit", action="store_true", default=True)
    audit.add_argument("--no-audit", dest="audit", action="store_false")

    pyramid = sub.add_parser("pyramid", help="the dihedral pyramid family")
    psub = pyramid.add_subparsers(dest="pyramid_command", required=True)

    pclassify = psub.add_parser("classify", help="all distinct limit graphs for n")
    pclassify.add_argument("--n", type=int, required=True)
    pclassify.add_argument("--include-unproven", action="store_true")
    pclassify.add_argument("--format", choices=("text", "json"), default="text")

    pbuild = psub.add_parser("build", help="build one pyramid multicurve's graph")
    pbuild.add_argument("--n", type=int, required=True)
    pbuild.add_argument("--family", required=True, choices=FAMILIES)
    pbuild.add_argument("--variant", default=None)
    pbuild.add_argument("--param", type=int, default=0, help="winding parameter")
    pbuild.add_argument("--cycle-length", type=int, default=None)
    pbuild.add_argument("--format", choices=("text", "dot", "json"), default="text")
    paudit = pbuild.add_mutually_exclusive_group()
    paudit.add_argument("--audit", dest="audit", action="store_true", default=True)
    paudit.add_argument("--no-audit", dest="audit", action="store_false")

    dim = sub.add_parser("dim", help="dimension of a boundary stratum")
    dim.add_argument("--signature", required=True, metavar="SIG",
                     help="closed signature, e.g. '0;2,2,2,2,5'")
    dim.add_argument("--pinched", type=int, required=True, metavar="K")
    return parser


def _parse_signature(text: str) -> OrbifoldSignature:
    body = text.strip().strip("()")
    genus_part, _, cone_part = body.partition(";")
    try:
        genus = int(genus_part)
        orders = tuple(int(x) for x in cone_part.split(",") if x.strip())
        return OrbifoldSignature(genus=genus, cone_orders=orders)
    except ValueError as exc:
        raise _UsageError(f"bad signature {text!r}: {exc}") from exc


def _graph_json(graph: LabeledStratumGraph) -> dict:
    group = graph.action.group
    vertices = [
        {
            "id": graph.vertex_number[key],
            "piece": record.piece,
            "coset": group.names[record.coset],
            "degree": record.degree,
            "weight": record.weight,
        }
        for key, record in sorted(graph.vertices.items())
    ]
    edges = [
        {
            "curve": curve_id,
            "coset": group.names[rep],
            "ends": sorted(graph.vertex_number[v] for v in ends),
        }
        for (curve_id, rep), ends in sorted(graph.edges.items())
    ]
    return {
        "vertex_count": graph.vertex_count,
        "edge_count": graph.edge_count,
        "genus": graph.underlying.genus(),
        "stable": graph.underlying.is_stable(),
        "vertices": vertices,
        "edges": edges,
    }


def _subgroup_line(kind: str, label, subgroup: Subgroup) -> str:
    names = ", ".join(subgroup.element_names())
    return f"{kind} {label}: image subgroup of order {subgroup.order} = {{{names}}}"


def _print_build(
    action: SurfaceKernelAction,
    mc: MulticurveSpec,
    graph: LabeledStratumGraph,
    fmt: str,
    audit: bool,
    out,
    header_lines: list[str] | None = None,
) -> int:
    report = audit_graph(action, mc, graph) if audit else None
    if fmt == "json":
        payload = {"graph": _graph_json(graph)}
        if header_lines is not None:
            payload["parameters"] = header_lines
        payload["subgroups"] = {
            "pieces": {
                str(p.id): list(piece_image_subgroup(action, p).element_names())
                for p in mc.pieces
            },
            "curves": {
                c.id: list(curve_image_subgroup(action, c).element_names())
                for c in mc.curves
            },
        }
        if report is not None:
            payload["audit"] = report.to_json_dict()
        out.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    elif fmt == "dot":
        out.write(graph.underlying.to_dot())
        if report is not None:
            for line in report.to_text().splitlines():
                out.write(f"// {line}\n")
    else:
        if header_lines:
            for line in header_lines:
                out.write(line + "\n")
        for piece in mc.pieces:
            out.write(_subgroup_line("piece", piece.id, piece_image_subgroup(action, piece)) + "\n")
        for curve in mc.curves:
            out.write(_subgroup_line("curve", curve.id, curve_image_subgroup(action, curve)) + "\n")
        out.write(graph.underlying.to_text())
        if report is not None:
            out.write(report.to_text())
    if report is not None and not report.ok:
        return EXIT_AUDIT
    return EXIT_OK


def _cmd_validate(args, out, err) -> int:
    action = load_action(args.action)
    problems = validate_action(action)
    multicurve = None
    if args.multicurve is not None:
        multicurve = load_multicurve(args.multicurve, action)
        problems += validate_multicurve(action, multicurve)
    if problems:
        for p in problems:
            err.write(p + "\n")
        return EXIT_VALIDATION
    out.write("action: ok\n")
    if multicurve is not None:
        out.write("multicurve: ok\n")
    return EXIT_OK


def _cmd_build(args, out, err) -> int:
    action = load_action(args.action)
    mc = load_multicurve(args.multicurve, action)
    problems = validate_action(action) + validate_multicurve(action, mc)
    if problems:
        for p in problems:
            err.write(p + "\n")
        return EXIT_VALIDATION
    graph = build_stratum_graph(action, mc)
    return _print_build(action, mc, graph, args.format, args.audit, out)


def _cmd_pyramid_classify(args, out, err) -> int:
    workers = os.environ.get("STRATA_LIMITS_THREADS")
    max_workers = int(workers) if workers else None
    entries = classify(args.n, include_unproven=args.include_unproven, max_workers=max_workers)
    if args.format == "json":
        payload = [
            {
                "description": e.description,
                "witness": {
                    "family": e.witness.family,
                    "variant": e.witness.variant,
                    "winding": e.witness.winding,
                    "cycle_length": e.witness.cycle_length,
                },
                "count": e.count,
                "vertex_count": e.graph.vertex_count,
                "edge_count": e.graph.edge_count,
                "genus": e.graph.genus(),
                "weights": sorted(w for _, w in e.graph.vertices),
                "graph": e.graph.to_text().splitlines(),
            }
            for e in entries
        ]
        out.write(json.dumps({"n": args.n, "classes": payload}, indent=2) + "\n")
    else:
        out.write(f"n={args.n}: {len(entries)} distinct stable graphs\n")
        for i, e in enumerate(entries, 1):
            out.write(
                f"[{i}] v={e.graph.vertex_count} e={e.graph.edge_count} "
                f"genus={e.graph.genus()} "
                f"weights={sorted(w for _, w in e.graph.vertices)} "
                f"witness={e.description} ({e.witness.label()}) count={e.count}\n"
            )
            for line in e.graph.to_text().splitlines():
                out.write(f"    {line}\n")
    return EXIT_OK


_DEFAULT_VARIANTS = {
    "one-arc": "direct",
    "two-arcs": "even",
    "one-closed": "left",
    "arc-plus-closed": "top-left",
}


def _cmd_pyramid_build(args, out, err) -> int:
    family = pyramid_action(args.n)
    variant = args.variant or _DEFAULT_VARIANTS[args.family]
    if variant not in VARIANTS[args.family]:
        raise _UsageError(
            f"unknown variant {variant!r} for {args.family} "
            f"(choose from {', '.join(VARIANTS[args.family])})"
        )
    params = PyramidMulticurveParams(
        family=args.family,
        variant=variant,
        winding=args.param,
        cycle_length=args.cycle_length,
    )
    mc = make_multicurve(family, params)
    graph = build_stratum_graph(family.action, mc)
    header = [f"n={args.n} {params.label()}"]
    return _print_build(family.action, mc, graph, args.format, args.audit, out, header)


def _cmd_dim(args, out, err) -> int:
    signature = _parse_signature(args.signature)
    try:
        out.write(f"{stratum_dimension(signature, args.pinched)}\n")
    except NoSuchStratumError:
        out.write("no such stratum\n")
    return EXIT_OK


def main(argv=None, out=None, err=None) -> int:
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "validate":
            return _cmd_validate(args, out, err)
        if args.command == "build":
            return _cmd_build(args, out, err)
        if args.command == "pyramid":
            if args.pyramid_command == "classify":
                return _cmd_pyramid_classify(args, out, err)
            return _cmd_pyramid_build(args, out, err)
        if args.command == "dim":
            return _cmd_dim(args, out, err)
        raise _UsageError(f"unknown command {args.command!r}")
    except _UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except SpecFormatError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except AuditError as exc:
        err.write(f"audit failure: {exc}\n")
        return EXIT_AUDIT
    except ValueError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
