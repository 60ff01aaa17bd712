"""Command line front end: one JSON document per run, optional figure file.

Exit codes: 0 on success, 1 on invalid input (diagnostic on stderr), 2 when
a structurally valid request has a negative outcome (infeasible instance,
inapplicable derivation, failed cross-check, empty solution set).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from .baskets import (
    BasketSet,
    Infeasible,
    ReidModel,
    basket_from_b,
    parse_rational,
    pluri_table,
    rat_str,
)
from .classify import ConstraintProblem, enumerate_solutions
from .jsonio import serialize, to_jsonable
from .mainproof import prove_main
from .slopes import (
    FIBER_1_2,
    InsufficientSlope,
    base_bounds,
    fiber_volume_bound,
    propagate,
)
from .wci import (
    WeightedCI,
    canonical_amplitude,
    canonical_volume,
    hilbert_coeffs,
    plurigenera_from_hilbert,
    reid_consistency,
)
from .xi import PRESETS, XiProblem, run_preset, volume_bound, xi_iterate


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _parse_basket_arg(text: str):
    try:
        r, b = (int(part) for part in text.split(","))
    except ValueError:
        raise _UsageError(f"expected a basket as 'r,b', got {text!r}") from None
    return basket_from_b(r, b)


def _parse_filter_arg(text: str) -> tuple[int, int]:
    try:
        m, _, value = text.partition("=")
        return int(m), int(value)
    except ValueError:
        raise _UsageError(f"expected a plurigenus target as 'm=value', got {text!r}") from None


def _parse_schedule_arg(text: str):
    pairs = []
    for chunk in text.split(","):
        try:
            i, _, j = chunk.partition("+")
            pairs.append((int(i), int(j)))
        except ValueError:
            raise _UsageError(f"expected a schedule pair as 'i+j', got {chunk!r}") from None
    return tuple(pairs)


def build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json-indent", type=int, default=None, metavar="N",
                        help="pretty-print the JSON report (whitespace only)")
    common.add_argument("--figure", metavar="PATH", default=None,
                        help="also render a figure of the report to PATH")

    parser = _Parser(prog="canvol",
                     description="exact plurigenus and canonical-volume reports")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("pluri", parents=[common],
                       help="plurigenus table of a basket model")
    p.add_argument("--k3", required=True, type=parse_rational)
    p.add_argument("--chi", required=True, type=int)
    p.add_argument("--basket", action="append", default=[], metavar="r,b",
                   type=_parse_basket_arg)
    p.add_argument("--mmax", required=True, type=int)

    c = sub.add_parser("classify", parents=[common],
                       help="enumerate basket configurations from plurigenera")
    c.add_argument("--chi", required=True, type=int)
    c.add_argument("--p2", required=True, type=int)
    c.add_argument("--p3", required=True, type=int)
    c.add_argument("--p", action="append", default=[], metavar="m=value",
                   type=_parse_filter_arg, help="higher plurigenus target")
    c.add_argument("--rmax", type=int, default=None)

    w = sub.add_parser("wps", parents=[common],
                       help="weighted complete-intersection invariants")
    w.add_argument("--weights", required=True,
                   type=lambda s: tuple(int(x) for x in s.split(",")))
    w.add_argument("--degrees", required=True,
                   type=lambda s: tuple(int(x) for x in s.split(",")))
    w.add_argument("--upto", type=int, default=10)
    w.add_argument("--claim", action="append", default=[], metavar="r,b",
                   type=_parse_basket_arg, help="claimed basket for the cross-check")
    w.add_argument("--chi", type=int, default=0)

    x = sub.add_parser("xi", parents=[common],
                       help="canonical-degree bounds, preset or custom")
    x.add_argument("--preset", choices=sorted(PRESETS), default=None)
    x.add_argument("--m0", type=int)
    x.add_argument("--p", type=int)
    x.add_argument("--beta", type=parse_rational)
    x.add_argument("--beta-open", action="store_true")
    x.add_argument("--degkc", type=int)
    x.add_argument("--even-c", action="store_true")
    x.add_argument("--mmax", type=int, default=100)
    x.add_argument("--rounds", type=int, default=50)

    s = sub.add_parser("slope", parents=[common],
                       help="slope chain over a genus-1 base with (1,2) fibers")
    s.add_argument("--schedule", type=_parse_schedule_arg, default=None,
                   metavar="i+j,...")

    sub.add_parser("prove-main", parents=[common],
                   help="assemble the global volume bound")
    return parser


def _cmd_pluri(args):
    model = ReidModel(args.k3, args.chi, BasketSet(args.basket))
    table = pluri_table(model, args.mmax)
    payload = {"P": {str(m): rat_str(v) for m, v in table.items()}}
    if args.figure:
        from . import figures
        figures.render_pluri(table, args.figure)
    return payload, 0


def _cmd_classify(args):
    filters = dict(args.p)
    r_max = args.rmax
    if r_max is None:
        if 4 in filters and 5 in filters:
            r_max = 50
        else:
            raise _UsageError(
                "--rmax is required unless targets for both P_4 and P_5 are given"
            )
    problem = ConstraintProblem(args.chi, args.p2, args.p3, filters, r_max)
    report = enumerate_solutions(problem)
    if args.figure:
        from . import figures
        figures.render_classification(report, args.figure)
    return to_jsonable(report), 0 if report.solutions else 2


def _cmd_wps(args):
    x = WeightedCI(args.weights, args.degrees)
    alpha = canonical_amplitude(x)
    coeffs = hilbert_coeffs(x, args.upto)
    payload = {
        "weights": list(x.weights),
        "degrees": list(x.degrees),
        "amplitude": alpha,
        "k3": rat_str(canonical_volume(x)) if alpha >= 1 else None,
        "hilbert": list(coeffs.values),
        "plurigenera": {str(m): v for m, v in plurigenera_from_hilbert(x, args.upto).items()}
            if alpha == 1 else None,
    }
    code = 0
    if args.claim:
        report = reid_consistency(x, BasketSet(args.claim), args.chi, max(args.upto, 2))
        payload["consistency"] = to_jsonable(report)
        if not report.passed:
            code = 2
    if args.figure:
        from . import figures
        figures.render_hilbert(coeffs.values, args.figure)
    return payload, code


def _cmd_xi(args):
    if args.preset is not None:
        run = run_preset(args.preset)
        trace, xi_val, volume = run.trace, run.xi, run.volume
    else:
        missing = [name for name, value in
                   (("--m0", args.m0), ("--p", args.p),
                    ("--beta", args.beta), ("--degkc", args.degkc))
                   if value is None]
        if missing:
            raise _UsageError(
                "either --preset or all of --m0/--p/--beta/--degkc are required "
                f"(missing {', '.join(missing)})"
            )
        prob = XiProblem(args.m0, args.p, args.beta, args.degkc,
                         beta_is_open_limit=args.beta_open, even_c=args.even_c)
        trace = xi_iterate(prob, m_max=args.mmax, round_max=args.rounds)
        xi_val = trace.final
        volume = volume_bound(prob.p, prob.beta, prob.m0, xi_val)
    payload = {
        "xi": rat_str(xi_val),
        "volume": rat_str(volume),
        "trace": to_jsonable(trace),
    }
    if args.figure:
        from . import figures
        figures.render_trace(trace, args.figure)
    return payload, 0


def _cmd_slope(args):
    state = base_bounds(FIBER_1_2)
    state = propagate(state) if args.schedule is None else propagate(state, args.schedule)
    payload = to_jsonable(state)
    volume = None
    for n in sorted(state.bounds):
        try:
            volume = {"n": n, "bound": rat_str(fiber_volume_bound(state, n))}
            break
        except InsufficientSlope:
            continue
    payload["volume"] = volume
    if args.figure:
        from . import figures
        figures.render_slopes(state, args.figure)
    return payload, 0 if volume is not None else 2


def _cmd_prove_main(args):
    report = prove_main()
    if args.figure:
        from . import figures
        figures.render_main(report, args.figure)
    return to_jsonable(report), 0


_HANDLERS = {
    "pluri": _cmd_pluri,
    "classify": _cmd_classify,
    "wps": _cmd_wps,
    "xi": _cmd_xi,
    "slope": _cmd_slope,
    "prove-main": _cmd_prove_main,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        payload, code = _HANDLERS[args.cmd](args)
    except _UsageError as exc:
        print(f"canvol: error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, ZeroDivisionError) as exc:
        print(f"canvol: error: {exc}", file=sys.stderr)
        return 1
    except Infeasible as exc:
        print(serialize({"outcome": "infeasible", "detail": str(exc)},
                        getattr(args, "json_indent", None)))
        return 2
    print(serialize(payload, args.json_indent))
    return code


def entry() -> None:
    sys.exit(main())
