"""Command-line entry point: per-digraph analysis, family generation,
boundary export, surveys, conjecture checks, and decompositions.

Exit codes: 0 success, 1 usage error, 2 computation failure, 3 conjecture
counterexample found (so CI jobs can gate on it).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import balanced as bal
from . import families
from . import graph
from . import rnr
from . import survey


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dumps(obj) -> str:
    """Compact JSON with insertion key order and shortest round-trip floats."""
    if isinstance(obj, dict):
        return "{" + ",".join(f"{json.dumps(k)}:{_dumps(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_dumps(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return repr(float(obj))
    return json.dumps(obj)


def _read_input(path: str) -> graph.Digraph:
    if path == "-":
        return graph.read_dgf(sys.stdin.read())
    with open(path, encoding="utf-8") as fh:
        return graph.read_dgf(fh.read())


def _write_output(text: str, path: str | None) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _build_parser() -> _Parser:
    parser = _Parser(prog="rnr-spread", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, inputs=False, order=False):
        p.add_argument("--out", metavar="PATH", default=None)
        if inputs:
            p.add_argument("--input", metavar="PATH", required=True,
                           help="DGF file, or '-' for stdin")
        if order:
            p.add_argument("--order", type=int, required=True)

    p = sub.add_parser("compute", help="alpha/beta/spread and class for one digraph")
    add_common(p, inputs=True)
    p.add_argument("--json", action="store_true")
    p.add_argument("--sweep", type=int, default=rnr.DEFAULT_SWEEP)

    p = sub.add_parser("family", help="emit a named family member as DGF")
    p.add_argument("kind", choices=sorted(families.FAMILY_KINDS))
    p.add_argument("params", type=int, nargs="+")
    add_common(p)

    p = sub.add_parser("boundary", help="boundary sweep CSV of the restricted range")
    add_common(p, inputs=True)
    p.add_argument("--sweep", type=int, default=rnr.DEFAULT_SWEEP)

    p = sub.add_parser("survey", help="scatter records CSV for an exhaustive run")
    add_common(p, order=True)
    p.add_argument("--filter", choices=survey.FILTERS, default="all")
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--no-classes", action="store_true",
                   help="skip polygonal-class verdicts (faster)")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("check", help="conjecture reports JSON for an exhaustive run")
    add_common(p, order=True)
    p.add_argument("--filter", choices=survey.FILTERS, default="balanced")
    p.add_argument("--dedup", action="store_true")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("decompose", help="convex decomposition JSON of a weighted digraph")
    add_common(p, inputs=True)
    p.add_argument("--method", choices=("auto", "balanced", "level"), default="auto")
    return parser


def _cmd_compute(args) -> int:
    g = _read_input(args.input)
    summary = rnr.summarize(g, m=args.sweep)
    if args.json:
        text = _dumps({"alpha": summary.alpha, "beta": summary.beta,
                       "spread": summary.spread, "class": summary.verdict.value}) + "\n"
    else:
        text = (f"alpha  {summary.alpha:.17g}\nbeta   {summary.beta:.17g}\n"
                f"spread {summary.spread:.17g}\nclass  {summary.verdict.value}\n")
    _write_output(text, args.out)
    return 0


def _cmd_family(args) -> int:
    g = families.generate(args.kind, *args.params)
    _write_output(graph.write_dgf(g), args.out)
    return 0


def _cmd_boundary(args) -> int:
    g = _read_input(args.input)
    curve = rnr.boundary_sweep(g, m=args.sweep)
    _write_output(rnr.boundary_csv(curve), args.out)
    return 0


def _cmd_survey(args) -> int:
    records = survey.scatter(args.order, args.filter, dedup=args.dedup,
                             classes=not args.no_classes, threads=args.threads)
    _write_output(survey.emit_csv(records), args.out)
    return 0


def _cmd_check(args) -> int:
    records = survey.scatter(args.order, args.filter, dedup=args.dedup,
                             threads=args.threads)
    reports = survey.check_conjectures(records, args.order)
    docs = [{"conjecture": r.conjecture, "order": r.order, "status": r.status,
             "witnesses": list(r.witnesses), "stats": r.stats} for r in reports]
    _write_output(_dumps(docs) + "\n", args.out)
    return 3 if any(r.status == "counterexample" for r in reports) else 0


def _cmd_decompose(args) -> int:
    g = _read_input(args.input)
    method = args.method
    if method == "auto":
        method = "balanced" if graph.is_balanced(g) else "level"
    if method == "balanced":
        decomp = bal.balanced_decomposition(g)
    else:
        decomp = bal.level_set_decomposition(g)
    doc = {"coefficients": [c for c, _ in decomp.parts],
           "parts": [graph.write_dgf(part) for _, part in decomp.parts],
           "reconstruction_error": decomp.reconstruction_error(g)}
    _write_output(_dumps(doc) + "\n", args.out)
    return 0


_COMMANDS = {
    "compute": _cmd_compute,
    "family": _cmd_family,
    "boundary": _cmd_boundary,
    "survey": _cmd_survey,
    "check": _cmd_check,
    "decompose": _cmd_decompose,
}


def run(argv) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(f"rnr-spread: {exc}", file=sys.stderr)
        return 1
    try:
        return _COMMANDS[args.command](args)
    except (ValueError, OSError) as exc:
        print(f"rnr-spread: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
