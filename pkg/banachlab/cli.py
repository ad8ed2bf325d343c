"""
Command-line entry point: banachlab <command> ...
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import List, Optional

from . import __version__
from .algebra import Element
from .config import BANACHLAB_SEED, configure_logging
from .exceptions import BanachLabError, ClaimFailed
from .gallery import failed_claims, raise_for_failures, run_gallery
from .ideals import cohen_factorize, hsa_factorize, support_idempotent
from .io import load_algebra, parse_coefficients, write_json
from .mideals import central_ideal, cssw_lift, quotient_numrange, real_positive_lift
from .numrange import cone_report, numrange, numrange_outer
from .roots import power
from .schemas import PowerMethod, SupportRoute, _encode_complex

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CLAIM_FAILED = 2
EXIT_INPUT_ERROR = 3

METHODS = {"series": PowerMethod.SERIES, "quad": PowerMethod.QUADRATURE}


def _emit(report: dict, path: Optional[str]) -> None:
    if path:
        write_json(report, path)
    print(json.dumps(report, indent=2, sort_keys=True))


def _element_report(x: Element) -> dict:
    return {"coeffs": _encode_complex(x.coeffs), "norm": x.norm()}


def cmd_gallery(args: argparse.Namespace) -> int:
    report = run_gallery(args.filter, seed=args.seed)
    if args.json:
        write_json(report, args.json)
    for case in report["cases"]:
        for claim in case["claims"]:
            status = "ok  " if claim["passed"] else "FAIL"
            print(f"{status} {case['id']:<13} {claim['description']} (margin {claim['margin']:.3g})")
    for case_id, description, margin in failed_claims(report):
        log.error("%s: %s failed with margin %.3g", case_id, description, margin)
    raise_for_failures(report)
    return EXIT_OK


def cmd_numrange(args: argparse.Namespace) -> int:
    algebra = load_algebra(args.algebra)
    x = parse_coefficients(args.coeffs, algebra)
    grid = {"rings": args.rings, "angles": args.angles, "n_directions": args.directions}
    body = numrange(x, args.samples, args.seed, **grid)
    report = {"element": _element_report(x), "cone": cone_report(x).to_dict(), "numrange": body.to_dict()}
    if args.csv:
        from .plotting import write_inner_csv, write_support_csv

        prefix = Path(args.csv)
        write_support_csv(body, prefix.with_name(prefix.name + "_support.csv"))
        write_inner_csv(body, prefix.with_name(prefix.name + "_inner.csv"))
    if args.svg:
        from .plotting import emit_plot

        emit_plot(body, args.svg)
    _emit(report, args.json)
    return EXIT_OK


def cmd_root(args: argparse.Namespace) -> int:
    algebra = load_algebra(args.algebra)
    x = parse_coefficients(args.coeffs, algebra)
    method = METHODS[args.method] if args.method else None
    result = power(x, args.t, method)
    _emit({"element": _element_report(x), "t": args.t, "power": result.to_dict()}, args.json)
    return EXIT_OK


def cmd_factorize(args: argparse.Namespace) -> int:
    algebra = load_algebra(args.algebra)
    targets = [parse_coefficients(text, algebra) for text in args.target]
    pool = [parse_coefficients(text, algebra) for text in args.pool]
    factorize = hsa_factorize if args.two_sided else cohen_factorize
    z, factors, trace = factorize(targets, pool, args.eps)
    report = {
        "z": _element_report(z),
        "factors": [_element_report(w) for w in factors],
        "trace": trace.to_dict(),
    }
    _emit(report, args.json)
    return EXIT_OK


def cmd_support(args: argparse.Namespace) -> int:
    algebra = load_algebra(args.algebra)
    x = parse_coefficients(args.coeffs, algebra)
    result = support_idempotent(x, SupportRoute(args.route), crosscheck=not args.no_crosscheck)
    _emit({"element": _element_report(x), "support": result.to_dict()}, args.json)
    return EXIT_OK


def cmd_lift(args: argparse.Namespace) -> int:
    algebra = load_algebra(args.algebra)
    x = parse_coefficients(args.coeffs, algebra)
    ideal = central_ideal(algebra, parse_coefficients(args.ideal, algebra))
    if args.alpha is None:
        lifted = real_positive_lift(x, ideal)
    else:
        lifted = cssw_lift(x, ideal, complex(args.alpha.replace(" ", "")), args.mode)
    report = {
        "element": _element_report(x),
        "quotient_norm": ideal.quotient_norm(x),
        "lift": _element_report(lifted),
        "cone": cone_report(lifted).to_dict(),
    }
    if args.svg:
        from .plotting import emit_plot

        body = quotient_numrange(x, ideal)
        emit_plot(body, args.svg, overlays=[("W(v)", numrange_outer(lifted, grid_from=body))], label="W(Q(x))")
    _emit(report, args.json)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="banachlab", description="Computations in finite-dimensional Banach algebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--seed", type=lambda text: int(text, 0), default=BANACHLAB_SEED, help="random seed")
    commands = parser.add_subparsers(dest="command", required=True)

    def with_element(name: str, help_text: str) -> argparse.ArgumentParser:
        sub = commands.add_parser(name, help=help_text)
        sub.add_argument("algebra", help="algebra JSON file or gallery algebra name")
        sub.add_argument("coeffs", help="coefficients: JSON list or comma separated complex literals")
        sub.add_argument("--json", metavar="PATH", help="also write the report to PATH")
        return sub

    gallery = commands.add_parser("gallery", help="run the regression gallery")
    gallery.add_argument("--filter", metavar="ID", help="case id, e.g. ex1 (also runs ex1-*)")
    gallery.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    gallery.set_defaults(handler=cmd_gallery)

    num = with_element("numrange", "outer and inner numerical range")
    num.add_argument("--svg", metavar="PATH")
    num.add_argument("--csv", metavar="PREFIX", help="write PREFIX_support.csv and PREFIX_inner.csv")
    num.add_argument("--samples", type=int, default=2000)
    num.add_argument("--rings", type=int, default=8)
    num.add_argument("--angles", type=int, default=16)
    num.add_argument("--directions", type=int, default=360)
    num.set_defaults(handler=cmd_numrange)

    root = with_element("root", "principal fractional power x^t")
    root.add_argument("--t", type=float, default=0.5)
    root.add_argument("--method", choices=sorted(METHODS))
    root.set_defaults(handler=cmd_root)

    support = with_element("support", "support idempotent s(x)")
    support.add_argument("--route", choices=[r.value for r in SupportRoute], default=SupportRoute.ALGEBRAIC.value)
    support.add_argument("--no-crosscheck", action="store_true")
    support.set_defaults(handler=cmd_support)

    lift = with_element("lift", "norm-preserving lift modulo an M-ideal")
    lift.add_argument("--ideal", required=True, help="coefficients of the central idempotent z with J = zA")
    lift.add_argument("--alpha", help="interior point, e.g. 0.1+0.2j; omit for a real-positive lift")
    lift.add_argument("--mode", choices=["closed_form", "iteration"], default="closed_form")
    lift.add_argument("--svg", metavar="PATH")
    lift.set_defaults(handler=cmd_lift)

    factor = commands.add_parser("factorize", help="Cohen factorization with a single left factor")
    factor.add_argument("algebra")
    factor.add_argument("--target", action="append", required=True, help="element to factor; repeatable")
    factor.add_argument("--pool", action="append", required=True, help="approximate identity candidate; repeatable")
    factor.add_argument("--eps", type=float, default=0.1)
    factor.add_argument("--two-sided", action="store_true", help="hereditary subalgebra form x = z w z")
    factor.add_argument("--json", metavar="PATH")
    factor.set_defaults(handler=cmd_factorize)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    levels = {0: None, 1: "INFO"}
    configure_logging(levels.get(args.verbose, "DEBUG"))
    try:
        return args.handler(args)
    except ClaimFailed as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CLAIM_FAILED
    except (BanachLabError, ValueError, OSError, ImportError) as exc:
        # json.JSONDecodeError is a ValueError
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
