"""Command-line front end.

Exit codes: 0 StrongestNonlocal, 1 NotStrongestNonlocal, 2 Inconclusive or
HypothesesViolated (or a resource-guard refusal), 3 invalid input/parameters.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path
from typing import Optional

from . import constructions
from .certifier import Verdict, certify, report_to_dict
from .graphs import build_graph, build_path_graph, is_connected, to_dot
from .oracle import (
    RESOURCE_GUARD_UNKNOWNS,
    ResourceGuardError,
    build_constraints,
    dump_system,
    oracle_verdict,
)
from .state_model import (
    Partition,
    StateSet,
    StateSetFormatError,
    parse_state_set,
    write_state_set,
)

EXIT_STRONGEST = 0
EXIT_NOT_STRONGEST = 1
EXIT_INCONCLUSIVE = 2
EXIT_INVALID = 3

_VERDICT_EXIT = {
    Verdict.STRONGEST_NONLOCAL: EXIT_STRONGEST,
    Verdict.NOT_STRONGEST_NONLOCAL: EXIT_NOT_STRONGEST,
    Verdict.INCONCLUSIVE: EXIT_INCONCLUSIVE,
    Verdict.HYPOTHESES_VIOLATED: EXIT_INCONCLUSIVE,
}


class CliError(Exception):
    """Invalid input or parameters; maps to exit code 3."""


def _add_input_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", type=Path, help="state-set document to read")
    p.add_argument(
        "--construction",
        choices=sorted(constructions.CONSTRUCTIONS),
        help="generate the input set instead of reading a document",
    )
    p.add_argument("--d", type=int, help="dimension for the odd/even families")


def _add_arithmetic_arg(p: argparse.ArgumentParser) -> None:
    p.add_argument(
        "--arithmetic",
        choices=["exact", "float", "auto"],
        default="auto",
        help="exact Gaussian rationals (weights dividing 4 only), floats, or "
        "auto selection (default)",
    )
    p.add_argument(
        "--force",
        action="store_true",
        help="override the resource guard on oracle system size",
    )


def _load_set(args) -> tuple[StateSet, str]:
    """Resolve the input set and the document text it is hashed from."""
    if (args.input is None) == (args.construction is None):
        raise CliError("exactly one of --input or --construction is required")
    if args.input is not None:
        try:
            text = args.input.read_text(encoding="utf-8")
        except OSError as e:
            raise CliError(f"cannot read {args.input}: {e}") from e
        try:
            return parse_state_set(text), text
        except StateSetFormatError as e:
            raise CliError(f"{args.input}: {e}") from e
    try:
        S = constructions.build(args.construction, args.d)
    except ValueError as e:
        raise CliError(str(e)) from e
    return S, write_state_set(S)


def _exact_flag(arithmetic: str) -> Optional[bool]:
    return {"exact": True, "float": False, "auto": None}[arithmetic]


def _partitions(selector: str) -> list[Partition]:
    if selector == "all":
        return list(Partition)
    return [Partition(selector)]


def cmd_generate(args) -> int:
    try:
        S = constructions.build(args.construction, args.d)
    except ValueError as e:
        raise CliError(str(e)) from e
    text = write_state_set(S)
    if args.output is not None:
        args.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    print(
        f"generated {args.construction}: dims={S.dims.as_tuple()} "
        f"states={S.n_states} tuples={len(S.tuples)}",
        file=sys.stderr,
    )
    return EXIT_STRONGEST


def cmd_certify(args) -> int:
    S, text = _load_set(args)
    try:
        report = certify(
            S,
            method=args.method,
            exact=_exact_flag(args.arithmetic),
            force=args.force,
        )
    except ValueError as e:
        raise CliError(str(e)) from e
    doc = report_to_dict(report)
    doc["input_sha256"] = hashlib.sha256(text.encode("utf-8")).hexdigest()
    doc["arithmetic"] = args.arithmetic
    out = json.dumps(doc, indent=2) + "\n"
    if args.report is not None:
        args.report.write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    print(f"verdict: {report.verdict.value}", file=sys.stderr)
    return _VERDICT_EXIT[report.verdict]


def cmd_graph(args) -> int:
    S, _ = _load_set(args)
    build = build_path_graph if args.path_subgraph else build_graph
    outputs = []
    for p in _partitions(args.partition):
        G = build(S, p)
        dot = to_dot(G)
        if args.output_dir is not None:
            args.output_dir.mkdir(parents=True, exist_ok=True)
            kind = "path" if args.path_subgraph else "full"
            path = args.output_dir / f"graph_{kind}_{p.value}.dot"
            path.write_text(dot, encoding="utf-8")
            outputs.append(path)
        else:
            sys.stdout.write(dot)
        print(
            f"cut {p.value}: {len(G.vertices)} vertices, {len(G.edges)} edges, "
            f"{'connected' if is_connected(G) else 'disconnected'}",
            file=sys.stderr,
        )
    if outputs:
        print("wrote " + ", ".join(str(o) for o in outputs), file=sys.stderr)
    return EXIT_STRONGEST


def cmd_oracle(args) -> int:
    S, _ = _load_set(args)
    exact = _exact_flag(args.arithmetic)
    all_trivial = True
    try:
        for p in _partitions(args.partition):
            if args.dump_system is not None:
                cs = build_constraints(
                    S, p, exact=exact, force=args.force, nonorthogonal="skip"
                )
                path = Path(f"{args.dump_system}_{p.value}.txt")
                path.write_text(dump_system(cs), encoding="utf-8")
                print(f"wrote {path}", file=sys.stderr)
            r = oracle_verdict(
                S, p, exact=exact, force=args.force, nonorthogonal="skip"
            )
            verdict = "trivial-only" if r.trivial_only else "nontrivial-exists"
            mode = "exact" if r.exact else f"float(tol={r.tolerance})"
            warn = " WARNING: borderline pivots" if r.warning else ""
            print(
                f"cut {r.partition.value}: dim={r.dimension} {verdict} "
                f"identity={'yes' if r.contains_identity else 'no'} "
                f"mode={mode}{warn}"
            )
            all_trivial = all_trivial and r.trivial_only
    except ResourceGuardError as e:
        print(f"refused: {e}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValueError as e:
        raise CliError(str(e)) from e
    return EXIT_STRONGEST if all_trivial else EXIT_NOT_STRONGEST


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghznl",
        description="Certify strongest nonlocality of tripartite GHZ-like "
        "state sets via graph connectivity and an exact POVM nullspace oracle.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="emit a state-set document")
    g.add_argument(
        "--construction",
        required=True,
        choices=sorted(constructions.CONSTRUCTIONS),
    )
    g.add_argument("--d", type=int, help="dimension for the odd/even families")
    g.add_argument("--output", type=Path)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("certify", help="produce a certification report")
    _add_input_args(c)
    c.add_argument("--method", choices=["graph", "oracle", "both"], default="both")
    _add_arithmetic_arg(c)
    c.add_argument("--report", type=Path, help="write the report here")
    c.set_defaults(func=cmd_certify)

    gr = sub.add_parser("graph", help="emit partition graphs as DOT")
    _add_input_args(gr)
    gr.add_argument("--partition", choices=["A", "B", "C", "all"], default="all")
    gr.add_argument(
        "--path-subgraph",
        action="store_true",
        help="emit the consecutive-edge subgraph instead of the full graph",
    )
    gr.add_argument("--output-dir", type=Path)
    gr.set_defaults(func=cmd_graph)

    o = sub.add_parser("oracle", help="report nullspace dimensions per cut")
    _add_input_args(o)
    o.add_argument("--partition", choices=["A", "B", "C", "all"], default="all")
    _add_arithmetic_arg(o)
    o.add_argument(
        "--dump-system",
        help="path prefix for sparse-triplet dumps of the constraint systems",
    )
    o.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
