"""Command-line front end.

Subcommands: decompose (bundle arithmetic), reduce (zero-differential normal
form with statements), vanishing-report (coverage of the symmetric-power
vanishing), verify (the pinned regression registry).  Exit codes: 0 ok,
1 regression diff, 2 parse error, 3 evaluation error, 4 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import grammar
from .errors import HiggsCalcError, ParseError, ResourceLimitError
from .evaluate import eval_bundle, eval_system
from .fiber import DEFAULT_LIMIT
from .grammar import latex_bundle, print_bundle
from .labels import FormalBundle
from .reduction import higgs_complex, reduce_complex
from .registry import named_strand, registry_report, run_registry
from .vanishing import (
    AxiomSet,
    apply_rules,
    coverage_report,
    coverage_to_json,
    coverage_to_text,
    statements_to_json,
    twist_bracket,
)

EXIT_OK = 0
EXIT_DIFF = 1
EXIT_PARSE = 2
EXIT_EVAL = 3
EXIT_RESOURCE = 4


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="higgscalc",
        description="Exact Higgs-complex calculator for compactified ball quotients",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--dim", type=int, default=2, help="torus dimension n (default 2)")
        p.add_argument(
            "--format", choices=("text", "json", "latex"), default="text", dest="fmt"
        )
        p.add_argument("--limit", type=int, default=DEFAULT_LIMIT, help="fiber rank limit")
        p.add_argument("--out", type=str, default=None, help="write output to a file")

    p = sub.add_parser("decompose", help="decompose a bundle expression into labels")
    p.add_argument("expr")
    common(p)

    p = sub.add_parser("reduce", help="reduced complex of a Higgs system, with statements")
    p.add_argument("expr", help="system expression, or named:<A|B|C|Cprime|Aprime>")
    common(p)
    p.add_argument("--axioms", type=str, default="", help="comma list: nefBig,saperRegular,kazdanSmall,fullRange")
    p.add_argument("--chains", action="store_true", help="include derivation chains")
    p.add_argument("--threads", type=int, default=1, help="worker threads for block ranks")

    p = sub.add_parser("vanishing-report", help="coverage of the symmetric-power vanishing")
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--max-m", type=int, default=8)
    p.add_argument("--axioms", type=str, default="")
    p.add_argument("--chains", action="store_true")
    p.add_argument("--format", choices=("text", "json"), default="text", dest="fmt")
    p.add_argument("--out", type=str, default=None)

    p = sub.add_parser("verify", help="run the pinned regression registry")
    p.add_argument("--out", type=str, default=None)
    return parser


def _emit(text: str, out_path) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _axioms(arg: str) -> AxiomSet:
    names = [a for a in (arg or "").split(",") if a.strip()]
    return AxiomSet.from_names(names)


def cmd_decompose(args) -> int:
    bundle = eval_bundle(grammar.parse_expr(args.expr), args.dim, args.limit)
    if args.fmt == "json":
        payload = {
            "dimension": args.dim,
            "expression": args.expr,
            "rank": bundle.rank(),
            "labels": [
                {
                    "lambda": list(lab.lam),
                    "lTwist": lab.l_twist,
                    "multiplicity": mult,
                    "rankPerSummand": lab.dimension(),
                }
                for lab, mult in bundle.entries
            ],
        }
        _emit(json.dumps(payload, indent=2), args.out)
    elif args.fmt == "latex":
        _emit(latex_bundle(bundle), args.out)
    else:
        lines = [f"{print_bundle(bundle)}", f"rank {bundle.rank()}"]
        for lab, mult in bundle.entries:
            lines.append(f"  {mult} x {print_bundle(FormalBundle.from_dict(args.dim, {lab: 1}))}  (rank {lab.dimension()})")
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_reduce(args) -> int:
    axioms = _axioms(args.axioms)
    if args.expr.startswith("named:"):
        complex_ = named_strand(args.expr[len("named:"):], args.dim)
    else:
        system = eval_system(grammar.parse_expr(args.expr), args.dim, args.limit)
        complex_ = higgs_complex(system)
    reduced = reduce_complex(complex_, threads=args.threads)
    annotated = twist_bracket(reduced)
    statements = apply_rules(annotated, axioms)
    if args.fmt == "json":
        payload = reduced.to_json_dict()
        payload["axioms"] = axioms.active()
        payload["statements"] = [st.to_json_dict() for st in statements]
        if not args.chains:
            for st in payload["statements"]:
                st.pop("chain", None)
        _emit(json.dumps(payload, indent=2), args.out)
    elif args.fmt == "latex":
        _emit(reduced.to_latex(), args.out)
    else:
        lines = [reduced.to_text(), f"axioms: {', '.join(axioms.active()) or '(none)'}"]
        for st in statements:
            line = f"  [{st.status}] {st.kind}: {st.subject_expr}"
            if args.chains and st.chain:
                line += "  <= " + "; ".join(f"{l.rule}: {l.citation}" for l in st.chain)
            lines.append(line)
        _emit("\n".join(lines), args.out)
    return EXIT_OK


def cmd_vanishing_report(args) -> int:
    axioms = _axioms(args.axioms)
    entries = coverage_report(args.max_n, args.max_m, axioms)
    if args.fmt == "json":
        _emit(coverage_to_json(entries, axioms), args.out)
    else:
        _emit(coverage_to_text(entries, axioms, chains=args.chains), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = run_registry()
    _emit(registry_report(results), args.out)
    return EXIT_DIFF if any(r.status == "diff" for r in results) else EXIT_OK


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "decompose":
            return cmd_decompose(args)
        if args.command == "reduce":
            return cmd_reduce(args)
        if args.command == "vanishing-report":
            return cmd_vanishing_report(args)
        return cmd_verify(args)
    except ParseError as err:
        print(f"parse error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except ResourceLimitError as err:
        print(f"resource limit: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except HiggsCalcError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_EVAL


if __name__ == "__main__":
    sys.exit(main())
