"""``heckelab`` command line.

Exit codes: 0 success, 2 input/schema error, 3 invalid bundle,
4 jet precision exhausted, 5 property counterexample.
"""

import argparse
import sys

from . import hn_profile as hp
from .blowup_bundle import optimize
from .documents import (
    DocumentError,
    dumps,
    format_rational,
    load_document,
    profile_blocks_json,
)
from .dot import trace_to_dot
from .errors import NotInvertibleError, PrecisionError, ProfileError
from .p1_bundle import hn_blocks, splitting_from_h0
from .verify import SUITES, run_suite

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUNDLE = 3
EXIT_PRECISION = 4
EXIT_COUNTEREXAMPLE = 5

PROFILE_COMMANDS = ("phi", "hecke", "bound", "partial-hn", "gr-tilde", "normalize", "equivalent")


class _Usage(Exception):
    pass


def _read(path):
    if path is None or path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise DocumentError(f"--input: cannot read {path}: {exc.strerror}") from None


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _trace_json(trace):
    return [
        {
            "top_blocks": s.top_blocks,
            "sub_rank": s.sub_rank,
            "phi_before": s.phi_before,
            "phi_after": s.phi_after,
            "jet_remaining": s.jet_remaining,
            "splitting_before": list(s.splitting_before),
            "splitting_after": list(s.splitting_after),
        }
        for s in trace
    ]


def cmd_split(args):
    kind, value = load_document(_read(args.input), expect=("blowup_bundle", "p1_transition"))
    restriction = value.restriction if kind == "blowup_bundle" else value
    splitting = restriction.splitting
    report = {
        "kind": kind,
        "splitting": list(splitting),
        "phi": splitting.phi,
        "hn_blocks": [[r, int(s)] for r, s in hn_blocks(splitting).pairs()],
        "verified": None,
    }
    code = EXIT_OK
    if args.verify:
        report["verified"] = splitting_from_h0(restriction) == splitting
        if not report["verified"]:
            code = EXIT_COUNTEREXAMPLE
    _write(args.output, dumps(report))
    return code


def cmd_optimize(args):
    _, bundle = load_document(
        _read(args.input), expect=("blowup_bundle",), jet_order=args.jet_order
    )
    start = bundle.splitting
    report = {"initial_splitting": list(start), "jet_order": bundle.jet_order}
    try:
        final, trace = optimize(bundle, schedule=args.schedule)
    except PrecisionError as exc:
        trace = exc.trace
        report.update(
            {
                "status": "precision_exhausted",
                "steps": len(trace),
                "phi_trace": trace.phi_values() or [start.phi],
                "trace": _trace_json(trace),
                "last_splitting": list(exc.bundle.splitting),
            }
        )
        _write(args.output, dumps(report))
        if args.emit_dot:
            _write(args.emit_dot, trace_to_dot(start, trace))
        print(f"heckelab: insufficient jet order after {len(trace)} steps", file=sys.stderr)
        return EXIT_PRECISION
    report.update(
        {
            "status": "optimal",
            "steps": len(trace),
            "phi_trace": trace.phi_values() or [start.phi],
            "trace": _trace_json(trace),
            "final_splitting": list(final.splitting),
        }
    )
    _write(args.output, dumps(report))
    if args.emit_dot:
        _write(args.emit_dot, trace_to_dot(start, trace, final.splitting))
    return EXIT_OK


def _profile_json(profile):
    return {"blocks": profile_blocks_json(profile), "phi": format_rational(hp.phi(profile))}


def cmd_profile(args):
    _, p = load_document(_read(args.input), expect=("hn_profile",))
    op = args.operation
    report = {"operation": op, "input": _profile_json(p)}
    if op == "phi":
        report["phi"] = format_rational(hp.phi(p))
    elif op in ("hecke", "bound"):
        if args.k is None:
            raise _Usage(f"--k is required for '{op}'")
        report["k"] = args.k
        if op == "hecke":
            report["result"] = _profile_json(hp.hecke_profile(p, args.k))
        else:
            report["bound"] = format_rational(hp.hecke_bound(p, args.k))
    elif op == "partial-hn":
        part = hp.partial_hn(p)
        report["indices"] = list(part.indices)
        report["twists"] = list(part.twists)
    elif op == "gr-tilde":
        part = hp.partial_hn(p)
        g = hp.gr_tilde(p)
        report["indices"] = list(part.indices)
        report["twists"] = list(part.twists)
        report["result"] = _profile_json(g)
        report["phi"] = format_rational(hp.phi(g))
    elif op == "normalize":
        report["result"] = _profile_json(hp.normalize_twist(p))
    elif op == "equivalent":
        if args.other is None:
            raise _Usage("--other is required for 'equivalent'")
        _, q = load_document(_read(args.other), expect=("hn_profile",))
        report["other"] = _profile_json(q)
        report["equivalent"] = hp.equivalent(p, q)
        report["cone_equivalent"] = hp.cone_equivalent(p, q)
    _write(args.output, dumps(report))
    return EXIT_OK


def cmd_verify(args):
    report = run_suite(args.suite, args.count, args.seed)
    _write(args.output, dumps(report))
    return EXIT_OK if report["passed"] else EXIT_COUNTEREXAMPLE


def build_parser():
    parser = argparse.ArgumentParser(
        prog="heckelab",
        description="Hecke transforms and optimal extensions across the exceptional divisor.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def io(p):
        p.add_argument("--input", "-i", help="input document (default: stdin)")
        p.add_argument("--output", "-o", help="report path (default: stdout)")

    p = sub.add_parser("split", help="splitting type of a bundle's restriction to D")
    io(p)
    p.add_argument("--verify", action="store_true", help="cross-check with the h0 oracle")
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("optimize", help="run Hecke transforms until the restriction is balanced")
    io(p)
    p.add_argument("--jet-order", type=int, help="override the working jet order")
    p.add_argument("--emit-dot", metavar="PATH", help="write the trace as a Graphviz digraph")
    p.add_argument("--schedule", choices=("top", "bound"), default="top")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("profile", help="operations on HN profiles")
    p.add_argument("operation", choices=PROFILE_COMMANDS)
    io(p)
    p.add_argument("--k", type=int, help="number of top HN blocks (hecke, bound)")
    p.add_argument("--other", help="second profile document (equivalent)")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("verify", help="seeded randomized property suites")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except (DocumentError, ProfileError, _Usage) as exc:
        print(f"heckelab: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except NotInvertibleError as exc:
        print(f"heckelab: {exc}", file=sys.stderr)
        return EXIT_BUNDLE
    except PrecisionError as exc:
        print(f"heckelab: {exc}", file=sys.stderr)
        return EXIT_PRECISION


if __name__ == "__main__":
    sys.exit(main())
