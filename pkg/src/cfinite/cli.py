"""Command-line interface.

Exit status is 0 on success, 2 for invalid input and 3 when a numerical
method breaks down on valid input.  Diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import sys
from typing import List, Optional, Sequence

from . import render
from .bench import ALL_METHODS, ITERATIVE_CAP, run_bench
from .document import SpecDocument, load_document, parse_scalar_text, spec_document
from .errors import InvalidInput, NumericFailure
from .fasteval import check_modulus, eval_companion_power, eval_kitamasa, infer_recurrence
from .model import SampleSet
from .solver import (
    closed_form,
    eval_corollary1,
    eval_determinant,
    eval_iterative,
    generating_function,
    reconstruct_from_samples,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NUMERIC = 3

MAX_INDEX = 2**63 - 1
EVAL_METHODS = ("iterative", "determinant", "vandermonde", "companion", "kitamasa")


def _index(text: str) -> int:
    try:
        h = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 0 <= h <= MAX_INDEX:
        raise argparse.ArgumentTypeError(f"index must be in 0..2^63-1, got {h}")
    return h


def _index_list(text: str) -> List[int]:
    return [_index(t) for t in text.split(",") if t.strip()]


def parse_samples(text: str) -> SampleSet:
    """``"k0=v0,k1=v1,..."``; values may be complex such as ``1-2i``."""
    mapping = {}
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if "=" not in item:
            raise InvalidInput(f"sample {item!r} is not of the form k=v")
        k, v = item.split("=", 1)
        try:
            idx = int(k)
        except ValueError:
            raise InvalidInput(f"bad sample index {k!r}") from None
        if idx in mapping:
            raise InvalidInput(f"sample index {idx} given twice")
        mapping[idx] = parse_scalar_text(v)
    if not mapping:
        raise InvalidInput("no samples given")
    return SampleSet.from_mapping(mapping)


def parse_terms(text: str) -> list:
    return [parse_scalar_text(t) for t in text.split(",") if t.strip()]


def _emit(text: str) -> None:
    sys.stdout.write(text + "\n")


def cmd_eval(args, doc: SpecDocument) -> None:
    spec = doc.require_spec()
    h, method = args.h, args.method
    if args.modulus is not None and method not in ("iterative", "companion", "kitamasa"):
        raise InvalidInput(f"--modulus is not supported by method {method!r}")
    check_modulus(args.modulus)
    if method == "iterative":
        value = eval_iterative(spec, h, args.modulus)
    elif method == "companion":
        value = eval_companion_power(spec, h, args.modulus)
    elif method == "kitamasa":
        value = eval_kitamasa(spec, h, args.modulus)
    elif method == "vandermonde":
        value = eval_corollary1(spec, doc.spectrum(), h, doc.tol)
    else:
        samples = SampleSet.from_initial(spec.initial)
        value = eval_determinant(samples, doc.spectrum(), h, doc.tol).value
    _emit(render.render_value(value, args.format, doc.tol.zero_tol))


def cmd_closed_form(args, doc: SpecDocument) -> None:
    spec = doc.require_spec()
    cf = closed_form(spec, doc.spectrum(), doc.tol)
    z = doc.tol.zero_tol
    if args.format == "json":
        _emit(render.closed_form_json(cf, z))
    elif args.format == "latex":
        _emit(render.closed_form_latex(cf, z))
    else:
        _emit(render.closed_form_text(cf, z))


def cmd_gf(args, doc: SpecDocument) -> None:
    spec = doc.require_spec()
    gf = generating_function(spec, doc.spectrum(), doc.tol)
    z = doc.tol.zero_tol
    if args.format == "json":
        _emit(render.gf_json(gf, z))
    elif args.format == "latex":
        _emit(render.gf_latex(gf, z))
    else:
        _emit(render.gf_text(gf, z))


def cmd_reconstruct(args, doc: SpecDocument) -> None:
    samples = parse_samples(args.samples)
    report = reconstruct_from_samples(samples, doc.spectrum(), args.h, doc.tol)
    _emit(render.render_value(report.value, args.format, doc.tol.zero_tol))


def cmd_roots(args, doc: SpecDocument) -> None:
    spectrum = doc.spectrum()
    if args.format == "json":
        _emit(render.roots_json(spectrum, doc.initial))
    else:
        _emit(render.roots_text(spectrum, doc.tol.zero_tol))


def cmd_infer(args) -> None:
    spec = infer_recurrence(parse_terms(args.terms), args.max_order)
    if args.format == "json":
        _emit(render.dumps(spec_document(spec)))
        return
    _emit(f"order: {spec.order}")
    _emit("coefficients: " + ", ".join(render.format_scalar(s) for s in spec.coefficients))
    _emit("initial: " + ", ".join(render.format_scalar(u) for u in spec.initial))


def cmd_bench(args, doc: SpecDocument) -> None:
    spec = doc.require_spec()
    methods = args.methods.split(",") if args.methods else ALL_METHODS
    for m in methods:
        if m not in EVAL_METHODS:
            raise InvalidInput(f"unknown method {m!r}")
    rows, deltas = run_bench(
        spec,
        args.h_list,
        doc.spectrum,
        methods=methods,
        tol=doc.tol,
        modulus=args.modulus,
        repeat=args.repeat,
        iterative_cap=args.iterative_cap,
    )
    if args.format == "json":
        _emit(
            render.dumps(
                {
                    "rows": [
                        {
                            "h": r.h,
                            "method": r.method,
                            "median_seconds": r.median_seconds,
                            "note": r.note,
                        }
                        for r in rows
                    ],
                    "max_disagreement": {str(h): d for h, d in deltas.items()},
                }
            )
        )
        return
    _emit(f"{'h':>12}  {'method':<12} {'median':>12}  note")
    for r in rows:
        t = f"{r.median_seconds * 1e3:.4f} ms" if r.median_seconds is not None else "-"
        _emit(f"{r.h:>12}  {r.method:<12} {t:>12}  {r.note}")
    for h, d in deltas.items():
        _emit(f"h={h}: max relative disagreement {d:.3g}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cfinite",
        description="Evaluate, solve and benchmark constant-coefficient linear recurrences.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_spec(p):
        p.add_argument("--spec", required=True, help="JSON spec document")
        return p

    formats = ("text", "json")
    p = with_spec(sub.add_parser("eval", help="evaluate one term"))
    p.add_argument("--h", type=_index, required=True)
    p.add_argument("--method", choices=EVAL_METHODS, default="determinant")
    p.add_argument("--modulus", type=int, help="odd prime (iterative/companion/kitamasa only)")
    p.add_argument("--format", choices=formats, default="text")

    p = with_spec(sub.add_parser("closed-form", help="explicit formula for the general term"))
    p.add_argument("--format", choices=formats + ("latex",), default="text")

    p = with_spec(sub.add_parser("gf", help="rational generating function"))
    p.add_argument("--format", choices=formats + ("latex",), default="text")

    p = with_spec(sub.add_parser("reconstruct", help="evaluate from values at arbitrary indices"))
    p.add_argument("--samples", required=True, help='"k0=v0,k1=v1,..."')
    p.add_argument("--h", type=_index, required=True)
    p.add_argument("--format", choices=formats, default="text")

    p = sub.add_parser("infer", help="find the smallest recurrence matching given terms")
    p.add_argument("--terms", required=True, help='"t0,t1,..."')
    p.add_argument("--max-order", type=int, required=True)
    p.add_argument("--format", choices=formats, default="text")

    p = with_spec(sub.add_parser("roots", help="characteristic roots with multiplicities"))
    p.add_argument("--format", choices=formats, default="text")

    p = with_spec(sub.add_parser("bench", help="time the evaluation methods"))
    p.add_argument("--h-list", type=_index_list, required=True, help='"h1,h2,..."')
    p.add_argument("--methods", help="comma-separated subset of " + ",".join(EVAL_METHODS))
    p.add_argument("--modulus", type=int)
    p.add_argument("--repeat", type=int, default=9)
    p.add_argument("--iterative-cap", type=int, default=ITERATIVE_CAP)
    p.add_argument("--format", choices=formats, default="text")
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "infer":
            cmd_infer(args)
            return EXIT_OK
        doc = load_document(args.spec)
        handler = {
            "eval": cmd_eval,
            "closed-form": cmd_closed_form,
            "gf": cmd_gf,
            "reconstruct": cmd_reconstruct,
            "roots": cmd_roots,
            "bench": cmd_bench,
        }[args.command]
        handler(args, doc)
    except InvalidInput as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NumericFailure as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def main() -> None:
    sys.exit(run())
