"""Command line front end: ``bicyclic <command> ...`` (or ``python -m bicyclic``)."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .interassociate import InterassociateParams, find_idempotents, star_ext
from .monoid import ZERO, ParseError, format_element, multiply, parse_element, reduce_word
from .quotient import IdealAxiomViolation, IdealFileError, IdealModel, rees_quotient
from .solver import SearchBoundExceeded, product_fiber, simplicity_witness, solve
from .topology import (
    KINDS,
    VERIFIED,
    ModelError,
    Ray,
    TopologyModel,
    check_cofinite_base,
    check_separate_continuity,
    check_zero_joint_continuity,
)
from .verify import ALGEBRA_WINDOW, DEFAULT_SEED, SUITES, TOPOLOGY_WINDOW, run_suites

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_MODEL = 3


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _element(text, allow_zero=False):
    try:
        x = parse_element(text)
    except ParseError as exc:
        raise CliError(f"malformed element {text!r}: {exc}", EXIT_USAGE) from exc
    if x is ZERO and not allow_zero:
        raise CliError(f"the zero is not allowed here: {text!r}", EXIT_USAGE)
    return x


def _params(args):
    if getattr(args, "sandwich", None):
        return InterassociateParams.from_sandwich(_element(args.sandwich))
    try:
        return InterassociateParams(args.m, args.n)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_USAGE) from exc


def _emit(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


# commands -------------------------------------------------------------------


def cmd_reduce(args):
    try:
        x = reduce_word(args.word)
    except ParseError as exc:
        raise CliError(f"malformed word {args.word!r}: {exc}", EXIT_USAGE) from exc
    _emit(args, {"word": args.word, "normal_form": format_element(x)}, format_element(x))
    return EXIT_OK


def cmd_mul(args):
    a, b = _element(args.a, True), _element(args.b, True)
    x = ZERO if ZERO in (a, b) else multiply(a, b)
    _emit(args, {"a": args.a, "b": args.b, "product": format_element(x)}, format_element(x))
    return EXIT_OK


def cmd_star(args):
    params = _params(args)
    a, b = _element(args.a, True), _element(args.b, True)
    x = star_ext(params, a, b)
    _emit(args, {"m": params.m, "n": params.n, "a": format_element(a), "b": format_element(b),
                 "product": format_element(x)}, format_element(x))
    return EXIT_OK


def cmd_solve(args):
    params = _params(args)
    sols = solve(args.side, params, _element(args.a), _element(args.b), args.bound)
    text = "{" + ", ".join(format_element(x) for x in sols) + "}"
    _emit(args, sols.to_dict(), text)
    return EXIT_OK


def cmd_witness(args):
    params = _params(args)
    a, b = _element(args.a), _element(args.b)
    try:
        w = simplicity_witness(params, a, b, args.max_total)
    except SearchBoundExceeded as exc:
        _emit(args, {"error": "search-bound-exceeded", "bound": exc.bound}, str(exc))
        return EXIT_FAILURE
    _emit(args, {"m": params.m, "n": params.n, "a": format_element(a), "b": format_element(b),
                 "x": format_element(w.x), "y": format_element(w.y), "total": w.total},
          f"x = {format_element(w.x)}, y = {format_element(w.y)}")
    return EXIT_OK


def cmd_fiber(args):
    params = _params(args)
    c = _element(args.c)
    pairs = sorted(product_fiber(params, c, args.window))
    shown = [[format_element(x), format_element(y)] for x, y in pairs]
    _emit(args, {"m": params.m, "n": params.n, "c": format_element(c), "window": args.window,
                 "size": len(pairs), "pairs": shown},
          f"{len(pairs)} pairs\n" + "\n".join(f"{x} * {y}" for x, y in shown))
    return EXIT_OK


def cmd_idempotents(args):
    params = _params(args)
    es = sorted(find_idempotents(params, args.window))
    shown = [format_element(e) for e in es]
    _emit(args, {"m": params.m, "n": params.n, "window": args.window, "idempotents": shown},
          " ".join(shown))
    return EXIT_OK


def load_custom_model(path, params) -> TopologyModel:
    """JSON: ``{"point": "q^1p^2", "rays": [{"axis": "q", "fixed": 0}],
    "excluded": ["p^5"], "zero": false}``."""
    try:
        data = json.loads(Path(path).read_text())
        point = data.get("point")
        zero = bool(data.get("zero", False))
        point = params.identity if point is None else parse_element(point)
        rays = [Ray(r["axis"], int(r["fixed"])) for r in data.get("rays", [])]
        excluded = [parse_element(x) for x in data.get("excluded", [])]
        if ZERO in excluded:
            raise ModelError("the zero cannot be excluded")
        return TopologyModel.custom_ray(params, rays, point, excluded, with_zero=zero)
    except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise CliError(f"bad model file {path}: {exc}", EXIT_MODEL) from exc


def _build_model(args, params):
    kind = "custom-ray" if args.model == "custom" else args.model
    if kind == "custom-ray":
        if not args.file:
            raise CliError("--model custom needs a model file", EXIT_USAGE)
        return load_custom_model(args.file, params)
    if args.file:
        raise CliError(f"--model {args.model} takes no model file", EXIT_USAGE)
    if kind == "discrete":
        return TopologyModel.discrete(params)
    if kind == "alexandroff":
        return TopologyModel.alexandroff(params)
    return TopologyModel.tube(params)


def cmd_topology(args):
    params = _params(args)
    model = _build_model(args, params)
    targets = None
    if args.forbidden:
        if model.kind != "alexandroff":
            raise CliError("--forbidden applies to the alexandroff model", EXIT_USAGE)
        forbidden = [_element(x) for x in args.forbidden.split(",") if x.strip()]
        targets = [("F", model.cofinite(forbidden))]
    report = check_separate_continuity(model, args.window, args.smax, args.reach, targets=targets)
    cof = check_cofinite_base(model, args.smax)
    payload = report.to_dict(all_checks=args.all)
    payload["cofinite_base"] = cof.cofinite
    payload["cofinite_witness_ray"] = str(cof.witness_ray) if cof.witness_ray else None
    lines = [
        model.describe(),
        f"separate continuity on window {args.window}, s_max {args.smax}, reach {report.reach}: "
        f"{report.verdict} ({report.count('verified')} verified, {report.count('violation')} "
        f"violation, {report.count('inconclusive')} inconclusive of {len(report.checks)})",
        f"every basic neighbourhood cofinite: {cof.cofinite}"
        + (f" (complement contains the ray {cof.witness_ray})" if cof.witness_ray else ""),
    ]
    for c in [c for c in report.checks if c.verdict != VERIFIED][:args.show]:
        lines.append(f"  {c.verdict}: {c.side} translation by {format_element(c.a)} "
                     f"into target {c.target}")
        for sp, w, y in c.escapes[:args.show]:
            lines.append(f"    s'={sp}: {format_element(w)} -> {format_element(y)}")
    if args.joint:
        if model.point is not ZERO:
            raise CliError("--joint needs a model at the zero", EXIT_USAGE)
        joint = check_zero_joint_continuity(model, args.smax)
        payload["joint"] = [j.to_dict() for j in joint]
        bad = [j for j in joint if j.verdict != VERIFIED]
        lines.append(f"joint continuity at (0,0): "
                     f"{'verified' if not bad else bad[0].verdict} "
                     f"(witnesses {[j.witness for j in joint]})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK if report.verdict == VERIFIED else EXIT_FAILURE


def cmd_quotient(args):
    params = _params(args)
    try:
        ideal = IdealModel.from_file(args.ideal)
    except (IdealFileError, ParseError) as exc:
        raise CliError(str(exc), EXIT_MODEL) from exc
    try:
        rep = rees_quotient(params, ideal, args.window)
    except IdealAxiomViolation as exc:
        triple = [x if isinstance(x, str) else format_element(x) for x in exc.triple]
        _emit(args, {"error": "ideal-axiom-violation", "triple": triple, "message": str(exc)},
              f"ideal-axiom-violation: {exc}")
        return EXIT_FAILURE
    payload = rep.to_dict()
    text = (f"quotient by |I|={rep.ideal_size} on window {args.window}: "
            f"{'matches' if rep.matches else 'differs from'} the C^0 table; "
            f"fiber over 0 has size {rep.fiber_sizes[ZERO]}, all others singletons"
            + ("" if rep.well_defined else "; NOT well defined"))
    if rep.mixed_associativity_failures:
        text += f"\nwarning: C+I is not associative, e.g. {payload['mixed_associativity_failures'][0]}"
    _emit(args, payload, text)
    return EXIT_OK if rep.ok else EXIT_FAILURE


def cmd_verify(args):
    reports = run_suites(args.suite, seed=args.seed, window=args.window,
                         topology_window=args.topology_window, s_max=args.smax)
    failed = sum(r.failed for r in reports)
    if args.json:
        print(json.dumps({"seed": args.seed, "failed": failed,
                          "reports": [r.to_dict() for r in reports]}, sort_keys=True))
    else:
        for r in reports:
            print(r.line())
        total = sum(r.cases for r in reports)
        print(f"{'OK' if not failed else 'FAILED'}: {total} cases, {failed} failed, "
              f"{sum(r.seconds for r in reports):.1f}s")
    return EXIT_OK if failed == 0 else EXIT_FAILURE


# parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="print structured output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help=f"seed for randomised checks (default {DEFAULT_SEED})")

    def mn(p, sandwich=False):
        p.add_argument("-m", type=int, default=0)
        p.add_argument("-n", type=int, default=0)
        if sandwich:
            p.add_argument("--sandwich", help="sandwich element q^Mp^N (overrides -m/-n)")

    parser = argparse.ArgumentParser(
        prog="bicyclic", parents=[common],
        description="Exact computations in the bicyclic monoid and its interassociates.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    p = sub.add_parser("reduce", parents=[common], help="normal form of a word over {p,q}")
    p.add_argument("word", nargs="?", default="")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("mul", parents=[common], help="bicyclic product a.b")
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_mul)

    p = sub.add_parser("star", parents=[common], help="interassociate product a *_{m,n} b")
    mn(p, sandwich=True)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_star)

    p = sub.add_parser("solve", parents=[common], help="solve a*x=b or x*a=b")
    p.add_argument("--side", choices=("left", "right"), default="left")
    mn(p, sandwich=True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--bound", type=int, help="scan all exponents up to this bound instead")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("witness", parents=[common], help="find x, y with x*a*y = b")
    mn(p, sandwich=True)
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--max-total", type=int, help="largest total exponent to search")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("fiber", parents=[common], help="pairs (x, y) with x*y = c")
    mn(p, sandwich=True)
    p.add_argument("c")
    p.add_argument("--window", type=int, default=ALGEBRA_WINDOW)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("idempotents", parents=[common], help="idempotents of *_{m,n} in a window")
    mn(p, sandwich=True)
    p.add_argument("--window", type=int, default=ALGEBRA_WINDOW)
    p.set_defaults(func=cmd_idempotents)

    p = sub.add_parser("topology", parents=[common], help="candidate topologies")
    tsub = p.add_subparsers(dest="action", required=True, metavar="action")
    t = tsub.add_parser("check", parents=[common], help="check separate continuity")
    t.add_argument("--model", required=True,
                   choices=[k for k in KINDS if k != "custom-ray"] + ["custom"])
    t.add_argument("file", nargs="?", help="JSON model file for --model custom")
    mn(t)
    t.add_argument("--window", type=int, default=TOPOLOGY_WINDOW)
    t.add_argument("--smax", type=int, default=TOPOLOGY_WINDOW)
    t.add_argument("--reach", type=int, help="largest s' tried as a witness")
    t.add_argument("--forbidden", help="comma separated finite set F; target is C^0 minus F")
    t.add_argument("--joint", action="store_true", help="also check joint continuity at (0,0)")
    t.add_argument("--all", action="store_true", help="include verified checks in --json output")
    t.add_argument("--show", type=int, default=5, help="non-verified checks to print")
    t.set_defaults(func=cmd_topology)

    p = sub.add_parser("quotient", parents=[common], help="Rees quotient by a finite ideal")
    p.add_argument("--ideal", required=True, help="JSON ideal description")
    mn(p)
    p.add_argument("--window", type=int, default=8)
    p.set_defaults(func=cmd_quotient)

    p = sub.add_parser("verify", parents=[common], help="run verification suites")
    p.add_argument("--suite", action="append", choices=sorted(SUITES) + ["all"],
                   help="suite to run (repeatable, default all)")
    p.add_argument("--window", type=int, default=ALGEBRA_WINDOW)
    p.add_argument("--topology-window", type=int, default=TOPOLOGY_WINDOW)
    p.add_argument("--smax", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", DEFAULT_SEED)
    if getattr(args, "suite", "unset") is None:
        args.suite = ["all"]
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
