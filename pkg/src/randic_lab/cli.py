"""Command-line interface: ``randic-lab <command> [options]``.

Commands::

    compute   --input FILE (--alpha A --family randic|chi | --preset NAME | --all-table1)
    generate  --n N --p P --kernel SPEC --seed S [--out FILE]
    limit     --n N --p P --kernel SPEC --alpha A --family F --mode exact|closed
    converge  --family F --alpha A --kernel SPEC --n-list N1,N2,... --p P --reps R --seed S
    summarize --input FILE [--name NAME]

Kernel SPEC is ``constant``, ``exp:KAPPA`` or ``matrix:FILE`` (CSV, n rows of
n comma-separated values). Global options ``--format json|csv|text`` and
``--quiet`` may appear before or after the command. ``RANDIC_LAB_THREADS``
caps worker threads for ``converge`` (0 = all cores).

Exit status is 0 on success, 1 on a runtime error and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from pathlib import Path
from typing import Sequence

from .edgelist import EdgeListError, read_edge_list, write_edge_list
from .generator import SampleConfig, sample_graph
from .graph import GraphError
from .harness import HypothesisViolation, converge_study, report_table, summarize_network
from .indices import (
    CHI_HALF,
    RANDIC_HALF,
    TABLE1_SPECS,
    ZAGREB,
    Family,
    IndexSpec,
    IndexValue,
    harmonic,
    index_suite,
)
from .kernels import KernelError, parse_kernel
from .limits import Mode, limit
from .quadrature import QuadratureError

PRESETS = ("randic-half", "zagreb", "harmonic", "chi-half")
_PRESET_SPECS = {"randic-half": RANDIC_HALF, "zagreb": ZAGREB, "chi-half": CHI_HALF}

# Keys of every --format json payload. tests/test_cli.py validates against these.
JSON_SCHEMAS = {
    "compute": {
        "type": "object",
        "required": ["input", "n", "edges", "indices", "diagnostics"],
        "properties": {
            "input": {"type": "string"},
            "n": {"type": "integer"},
            "edges": {"type": "integer"},
            "indices": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["name", "family", "alpha", "value", "edge_count"],
                    "properties": {
                        "name": {"type": "string"},
                        "family": {"enum": ["randic", "chi"]},
                        "alpha": {"type": "number"},
                        "value": {"type": "number"},
                        "edge_count": {"type": "integer"},
                    },
                },
            },
            "diagnostics": {
                "type": "object",
                "required": ["comments", "self_loops_dropped", "duplicates_collapsed", "warnings"],
            },
        },
    },
    "generate": {
        "type": "object",
        "required": ["n", "p", "kernel", "seed", "edges", "out"],
        "properties": {
            "n": {"type": "integer"},
            "p": {"type": "number"},
            "kernel": {"type": "object", "required": ["type", "epsilon"]},
            "seed": {"type": "integer"},
            "edges": {"type": "integer"},
            "out": {"type": ["string", "null"]},
        },
    },
    "limit": {
        "type": "object",
        "required": ["value", "mode", "family", "alpha", "n", "p", "kernel"],
        "properties": {
            "value": {"type": "number"},
            "mode": {"enum": ["exact_sum", "closed_form"]},
            "family": {"enum": ["randic", "chi"]},
            "alpha": {"type": "number"},
            "n": {"type": "integer"},
            "p": {"type": "number"},
            "kernel": {"type": "object", "required": ["type", "epsilon"]},
        },
    },
    "converge": {
        "type": "object",
        "required": ["family", "alpha", "kernel", "master_seed", "rate_estimate", "points"],
        "properties": {
            "rate_estimate": {"type": ["number", "null"]},
            "points": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": [
                        "n", "p", "np", "replicates", "limit", "mean_ratio",
                        "std_ratio", "seeds", "values", "ratios",
                    ],
                },
            },
        },
    },
    "summarize": {
        "type": "object",
        "required": [
            "name", "n", "edges", "density", "sparsity_bound", "d_max", "d_median", "d_min",
            "randic_half", "randic_neg1", "chi_half", "chi_neg1",
            "self_loops_dropped", "duplicates_collapsed", "warnings",
        ],
    },
}


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.6f}"


def _csv(rows: Sequence[Sequence]) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _warn(args, msg: str) -> None:
    if not args.quiet:
        print(f"warning: {msg}", file=sys.stderr)


def cmd_compute(args) -> tuple[object, str, str]:
    g, doc = read_edge_list(args.input)
    for w in doc.warnings:
        _warn(args, w)
    if args.all_table1:
        vals = list(index_suite(g, TABLE1_SPECS).values())
    elif args.preset:
        if args.preset == "harmonic":
            vals = [harmonic(g)]
        else:
            spec = _PRESET_SPECS[args.preset]
            vals = [IndexValue(index_suite(g, [spec])[spec].value, spec, g.num_edges, name=args.preset)]
    else:
        if args.alpha is None or args.family is None:
            raise UsageError("compute needs --alpha with --family, --preset, or --all-table1")
        spec = IndexSpec(Family(args.family), args.alpha)
        vals = [index_suite(g, [spec])[spec]]
    payload = {
        "input": str(args.input),
        "n": g.n,
        "edges": g.num_edges,
        "indices": [v.to_dict() for v in vals],
        "diagnostics": doc.diagnostics(),
    }
    text = "".join(f"{v.name}\t{_fmt(v.value)}\n" for v in vals)
    rows = [["name", "family", "alpha", "value"]] + [[v.name, v.spec.family.value, v.spec.alpha, repr(v.value)] for v in vals]
    return payload, text, _csv(rows)


def cmd_generate(args):
    kernel = parse_kernel(args.kernel)
    g = sample_graph(SampleConfig(args.n, args.p, kernel, args.seed))
    body = write_edge_list(g)
    out = args.out
    if out and out != "-":
        Path(out).write_text(body, encoding="utf-8")
    payload = {
        "n": g.n,
        "p": args.p,
        "kernel": kernel.describe(),
        "seed": args.seed,
        "edges": g.num_edges,
        "out": out if out and out != "-" else None,
    }
    if not out or out == "-":
        # edge list itself goes to stdout; the summary would corrupt it
        return None, body, body
    text = f"wrote {g.num_edges} edges on {g.n} nodes to {out}\n"
    return payload, text, _csv([["n", "p", "seed", "edges", "out"], [g.n, args.p, args.seed, g.num_edges, out]])


def cmd_limit(args):
    kernel = parse_kernel(args.kernel)
    spec = IndexSpec(Family(args.family), args.alpha)
    mode = Mode.EXACT if args.mode == "exact" else Mode.CLOSED
    res = limit(spec, args.n, args.p, kernel, mode)
    payload = res.to_dict()
    rows = [["family", "alpha", "n", "p", "mode", "value"], [spec.family.value, spec.alpha, args.n, args.p, mode.value, repr(res.value)]]
    return payload, _fmt(res.value) + "\n", _csv(rows)


def cmd_converge(args):
    kernel = parse_kernel(args.kernel)
    spec = IndexSpec(Family(args.family), args.alpha)
    report = converge_study(spec, kernel, args.n_list, args.p, args.reps, args.seed)
    lines = [f"{spec.label} kernel={kernel.name} seed={args.seed}", f"{'n':>8} {'p':>10} {'reps':>5} {'mean_ratio':>12} {'std_ratio':>12}"]
    for pt in report.points:
        lines.append(f"{pt.n:>8} {pt.p:>10g} {pt.replicates:>5} {_fmt(pt.mean_ratio):>12} {_fmt(pt.std_ratio):>12}")
    rate = "n/a" if report.rate_estimate is None else _fmt(report.rate_estimate)
    lines.append(f"rate_estimate {rate}")
    return report.to_dict(), "\n".join(lines) + "\n", report.to_csv()


def cmd_summarize(args):
    g, doc = read_edge_list(args.input)
    name = args.name or Path(args.input).stem
    s = summarize_network(name, g)
    for w in s.warnings:
        _warn(args, w)
    if s.self_loops_dropped or s.duplicates_collapsed:
        _warn(args, f"collapsed {s.duplicates_collapsed} duplicate edges and dropped {s.self_loops_dropped} self-loops")
    return s.to_dict(), report_table([s], "text"), report_table([s], "csv")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "text"], default=argparse.SUPPRESS, help="output format (default text)")
    common.add_argument("--quiet", action="store_true", default=argparse.SUPPRESS, help="suppress warnings")

    parser = argparse.ArgumentParser(
        prog="randic-lab",
        description="Randic-type indices, inhomogeneous Erdos-Renyi sampling and limit checks.",
        epilog="Kernel SPEC: constant | exp:KAPPA | matrix:FILE (n x n CSV). "
        "Edge lists: one 'u v' pair per line, '#' comments, optional '# n=N' header. "
        "Env RANDIC_LAB_THREADS caps worker threads (0 = auto).",
    )
    parser.add_argument("--format", choices=["json", "csv", "text"], default="text", help="output format (default text)")
    parser.add_argument("--quiet", action="store_true", help="suppress warnings")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("compute", parents=[common], help="compute indices of an edge-list graph")
    p.add_argument("--input", required=True, help="edge-list file")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--preset", choices=PRESETS)
    group.add_argument("--all-table1", action="store_true", help="R_-1/2, R_-1, chi_-1/2, chi_-1")
    group.add_argument("--alpha", type=float)
    p.add_argument("--family", choices=["randic", "chi"])
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("generate", parents=[common], help="sample a graph from G(n, p, f)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--kernel", default="constant", help="constant | exp:KAPPA | matrix:FILE")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", help="edge-list output file (default stdout)")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("limit", parents=[common], help="theoretical limit of an index")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--kernel", default="constant")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--family", choices=["randic", "chi"], required=True)
    p.add_argument("--mode", choices=["exact", "closed"], default="exact")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser("converge", parents=[common], help="Monte Carlo convergence study")
    p.add_argument("--family", choices=["randic", "chi"], required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--kernel", default="constant")
    p.add_argument("--n-list", type=_int_list, required=True, help="comma-separated node counts")
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--reps", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_converge)

    p = sub.add_parser("summarize", parents=[common], help="table row of descriptive statistics and indices")
    p.add_argument("--input", required=True)
    p.add_argument("--name")
    p.set_defaults(func=cmd_summarize)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.WARNING if args.quiet else logging.INFO, format="%(message)s", stream=sys.stderr)
    try:
        payload, text, csv_text = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except HypothesisViolation as exc:
        print(f"error: sparsity hypothesis violated: {exc}", file=sys.stderr)
        return 1
    except (OSError, EdgeListError, GraphError, KernelError, QuadratureError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.format == "json" and payload is not None:
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    elif args.format == "csv":
        sys.stdout.write(csv_text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
