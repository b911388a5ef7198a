"""Command-line front end.

Subcommands: oap, decompose, alpha, extremal, transfer, compose, tmcne,
fundeq, selftest.  Exit codes: 0 success/pass, 1 usage or parse error,
2 check failed, 3 inconclusive, 4 enumeration budget exceeded.

Output is deterministic: the human-readable summary and the JSON report
depend only on the arguments (and --seed where sampling is involved).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Optional

from . import additive as additive_mod
from .additive import (
    additive_from_multipoly,
    alpha_bound,
    brute_force_max,
    decompose,
    decomposition_image_agrees,
    oap_solve,
)
from .certificates import (
    FAIL,
    INCONCLUSIVE,
    PASS,
    fundeq_laurent,
    fundeq_padic,
    verify_tmcne,
)
from .composite import CompositeField
from .errors import (
    BudgetExceededError,
    CertificationError,
    ParseError,
    ValfieldError,
)
from .extremality import (
    Ball,
    DEFAULT_BUDGET,
    MAX_ATTAINED,
    ball_transfer,
    check_vexbarwex,
    composite_extremal_search,
    extremal_search,
    valuation_multiset,
)
from .laurent import LaurentField, parse_series
from .parsing import (
    PAdicFieldRef,
    parse_any_field,
    parse_ball,
    parse_int_poly,
    parse_poly,
)
from .polynomials import MultiPoly
from .selftest import run_all

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FAILED = 2
EXIT_INCONCLUSIVE = 3
EXIT_BUDGET = 4


def _emit(report: dict, json_path: Optional[str]) -> None:
    if json_path:
        text = json.dumps(report, indent=2, sort_keys=True)
        if json_path == "-":
            print(text)
        else:
            with open(json_path, "w") as fh:
                fh.write(text + "\n")


def _laurent_field(args) -> LaurentField:
    field = parse_any_field(args.field, prec=args.prec)
    if not isinstance(field, LaurentField):
        raise ParseError(f"expected a Laurent series field, got {args.field!r}")
    return field


# -- subcommand handlers ---------------------------------------------------


def cmd_oap(args) -> int:
    field = _laurent_field(args)
    mp = parse_poly(args.poly, field)
    pp = additive_from_multipoly(mp, field)
    if pp.constant is not None:
        raise ParseError("oap takes the additive part in --poly and the target in --target")
    z = parse_series(field, args.target, args.prec)
    result = oap_solve(pp.additive, z, args.prec, args.budget)
    print(f"field: {field.to_text()}")
    print(f"additive polynomial: {pp.additive.to_text()}")
    print(f"target: {z.to_text()}")
    if result.alpha is not None:
        print(f"alpha: {result.alpha.to_text()}")
    print(f"max v(target - f(a)): {result.value.to_text()}")
    for i, s in enumerate(result.best_input):
        print(f"best input a_{i + 1}: {s.to_text()}")
    report = result.to_dict()
    code = EXIT_OK
    if args.oracle:
        alpha = int(result.alpha.first) if result.alpha is not None else 0
        residual = MultiPoly.constant(mp.nvars, z) - mp
        wit, oracle_val = brute_force_max(
            residual, field, Ball(field.zero(args.prec), alpha),
            args.prec, args.budget,
        )
        agree = oracle_val.to_text() == result.value.to_text()
        print(f"oracle max: {oracle_val.to_text()} ({'agrees' if agree else 'DISAGREES'})")
        report["oracle"] = {"value": oracle_val.to_text(), "agrees": agree}
        if not agree:
            code = EXIT_FAILED
    _emit(report, args.json)
    return code


def cmd_decompose(args) -> int:
    field = _laurent_field(args)
    mp = parse_poly(args.poly, field)
    pp = additive_from_multipoly(mp, field)
    dec = decompose(pp.additive)
    print(f"field: {field.to_text()}")
    print(f"additive polynomial: {pp.additive.to_text()}")
    print(f"nu: {dec.nu}   summands: {len(dec.polys)}")
    for j, g in enumerate(dec.polys):
        lead = g.leading_coefficient()
        print(f"g_{j + 1}: {g.to_text()}   v(lead) = {lead.valuation().to_text()}")
    report = {
        "nu": dec.nu,
        "summands": [g.to_text() for g in dec.polys],
        "leadingValuations": [
            g.leading_coefficient().valuation().to_text() for g in dec.polys
        ],
    }
    code = EXIT_OK
    if args.oracle:
        # the saturating image comparison may lower the input window, so
        # the polynomial is re-read with generous coefficient precision
        field_hi = parse_any_field(args.field, prec=args.prec + 64)
        pp_hi = additive_from_multipoly(parse_poly(args.poly, field_hi), field_hi)
        dec_hi = decompose(pp_hi.additive)
        same = decomposition_image_agrees(pp_hi.additive, dec_hi, field_hi, args.prec)
        print(
            f"image check on the window [0, {args.prec}): "
            f"{'identical' if same else 'DIFFERENT'}"
        )
        report["imageCheck"] = {"prec": args.prec, "identical": same}
        if not same:
            code = EXIT_FAILED
    _emit(report, args.json)
    return code


def cmd_alpha(args) -> int:
    field = _laurent_field(args)
    mp = parse_poly(args.poly, field)
    pp = additive_from_multipoly(mp, field)
    dec = decompose(pp.additive)
    alpha = alpha_bound(pp, dec)
    print(f"field: {field.to_text()}")
    print(f"p-polynomial: {pp.to_text()}")
    print(f"nu: {dec.nu}   summands: {len(dec.polys)}")
    print(f"alpha: {alpha.to_text()}")
    _emit({"alpha": alpha.to_text(), "nu": dec.nu}, args.json)
    return EXIT_OK


def cmd_extremal(args) -> int:
    field = parse_any_field(args.field, prec=args.prec, prec_t=args.prec_t, prec_u=args.prec_u)
    if isinstance(field, CompositeField):
        mp = parse_poly(args.poly, field)
        result = composite_extremal_search(mp, field, args.u_floor, args.budget)
    elif isinstance(field, LaurentField):
        mp = parse_poly(args.poly, field)
        ball = (
            parse_ball(args.ball, field, args.prec)
            if args.ball
            else Ball(field.zero(args.prec), 0)
        )
        result = extremal_search(mp, field, ball, args.prec, args.budget)
    else:
        raise ParseError(f"unsupported field for extremal search: {args.field!r}")
    print(f"field: {field.to_text()}")
    print(f"polynomial: {mp.to_text()}")
    print(f"max value: {result.value.to_text()}")
    print(f"verdict: {result.verdict}")
    for i, w in enumerate(result.witness):
        print(f"witness a_{i + 1}: {w.to_text()}")
    _emit(result.to_dict(), args.json)
    return EXIT_OK if result.verdict == MAX_ATTAINED else EXIT_INCONCLUSIVE


def cmd_transfer(args) -> int:
    field = _laurent_field(args)
    mp = parse_poly(args.poly, field)
    a = parse_series(field, args.center_a, args.prec)
    b = parse_series(field, args.center_b, args.prec)
    c = parse_series(field, args.scale, args.prec)
    g = ball_transfer(mp, args.alpha, a, args.beta, b, c)
    print(f"f: {mp.to_text()}")
    print(f"g = f(c*(Y - a) + b): {g.to_text()}")
    # the bijection x = c*(y-a)+b maps B_alpha(a) reps mod t^N to
    # B_beta(b) reps mod t^(N + beta - alpha); cap both at N
    shift = args.beta - args.alpha
    m_f = valuation_multiset(
        mp, field, Ball(b, args.beta), args.prec + shift,
        cap=args.prec, budget=args.budget,
    )
    m_g = valuation_multiset(
        g, field, Ball(a, args.alpha), args.prec,
        cap=args.prec, budget=args.budget,
    )
    same = m_f == m_g
    print(
        f"valuation multisets over B_{args.beta}(b) for f and B_{args.alpha}(a) "
        f"for g mod t^{args.prec}: {'identical' if same else 'DIFFERENT'}"
    )
    _emit(
        {
            "g": g.to_text(),
            "multisetF": m_f,
            "multisetG": m_g,
            "identical": same,
        },
        args.json,
    )
    return EXIT_OK if same else EXIT_FAILED


def cmd_compose(args) -> int:
    field = parse_any_field(args.field, prec_t=args.prec_t, prec_u=args.prec_u)
    if not isinstance(field, CompositeField):
        raise ParseError(f"compose needs a composite field, got {args.field!r}")
    g = parse_poly(args.poly, field.inner)
    report = check_vexbarwex(g, field, args.u_floor, args.budget)
    print(f"field: {field.to_text()}")
    print(f"polynomial over the residue level: {g.to_text()}")
    print(f"composite search: {report.composite.value.to_text()} ({report.composite.verdict})")
    print(f"residue-level search: {report.residue_level.value.to_text()} ({report.residue_level.verdict})")
    if report.pushdown_value is not None:
        print(f"pushed-down witness value: {report.pushdown_value}")
    print(f"conclusion: {report.conclusion}")
    _emit(report.to_dict(), args.json)
    if report.conclusion == "Confirmed":
        return EXIT_OK
    if report.conclusion == "Inconclusive":
        return EXIT_INCONCLUSIVE
    return EXIT_FAILED


def cmd_tmcne(args) -> int:
    cert = verify_tmcne(args.p, prec=args.prec)
    print(f"p = {cert.p}")
    for step in cert.steps:
        print(f"  {step.name}: {'pass' if step.passed else 'FAIL'}")
    print(f"verdict: {cert.verdict}")
    _emit(cert.to_dict(), args.json)
    if cert.verdict == PASS:
        return EXIT_OK
    if cert.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_FAILED


def cmd_fundeq(args) -> int:
    field = parse_any_field(args.field, prec=args.prec or 8)
    if isinstance(field, PAdicFieldRef):
        coeffs = parse_int_poly(args.poly)
        cert = fundeq_padic(
            field.p, coeffs, prec=args.prec,
            irreducible_asserted=args.asserted,
        )
    elif isinstance(field, LaurentField):
        mp = parse_poly(args.poly, field, nvars=1)
        deg = max(e for (e,) in mp.terms)
        coeffs = [mp.terms.get((i,)) for i in range(deg + 1)]
        cert = fundeq_laurent(field, coeffs)
    else:
        raise ParseError(f"fundeq needs Q_p or a Laurent field, got {args.field!r}")
    print(f"polynomial: {cert.polynomial}")
    print(f"n = {cert.n}, e = {cert.e}, fRes = {cert.f_res}")
    print(f"certified by: {cert.certified_by}")
    print(f"n = e*fRes holds: {cert.equality_holds}")
    _emit(cert.to_dict(), args.json)
    if cert.verdict == PASS:
        return EXIT_OK
    if cert.verdict == INCONCLUSIVE:
        return EXIT_INCONCLUSIVE
    return EXIT_FAILED


def cmd_selftest(args) -> int:
    results = run_all(seed=args.seed, samples=args.samples)
    failed = False
    for name, failures in results.items():
        status = "ok" if not failures else f"{len(failures)} failures"
        print(f"{name}: {status}")
        for msg in failures[:5]:
            print(f"    {msg}")
        failed = failed or bool(failures)
    _emit(
        {name: failures for name, failures in results.items()},
        args.json,
    )
    return EXIT_FAILED if failed else EXIT_OK


# -- argument plumbing -----------------------------------------------------


def _add_common(sub, field=True, prec_default=8):
    if field:
        sub.add_argument("--field", required=True, help="field descriptor, e.g. \"F(3)((t))\"")
    sub.add_argument("--prec", type=int, default=prec_default, help="working error order")
    sub.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="enumeration budget")
    sub.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    sub.add_argument("--json", metavar="PATH", help="write a JSON report ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="valfield",
        description="exact computations in valued fields at finite precision",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("oap", help="best approximation by the image of an additive polynomial")
    _add_common(s)
    s.add_argument("--poly", required=True, help="additive polynomial, e.g. \"X^3 - X\"")
    s.add_argument("--target", required=True, help="series to approximate, e.g. \"t^-1\"")
    s.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    s.set_defaults(handler=cmd_oap)

    s = subs.add_parser("decompose", help="single-variable decomposition of an additive polynomial")
    _add_common(s, prec_default=4)
    s.add_argument("--poly", required=True)
    s.add_argument("--oracle", action="store_true", help="compare truncated image sets")
    s.set_defaults(handler=cmd_decompose)

    s = subs.add_parser("alpha", help="alpha bound of a p-polynomial")
    _add_common(s)
    s.add_argument("--poly", required=True, help="additive part plus optional constant")
    s.set_defaults(handler=cmd_alpha)

    s = subs.add_parser("extremal", help="max of v(f) over a truncated ball or valuation ring")
    _add_common(s, prec_default=4)
    s.add_argument("--poly", required=True)
    s.add_argument("--ball", help="e.g. \"v>=0 around 0\" (Laurent fields only)")
    s.add_argument("--prec-t", type=int, default=3, help="t-window for composite fields")
    s.add_argument("--prec-u", type=int, default=2, help="u-precision for composite fields")
    s.add_argument("--u-floor", type=int, default=0, help="lowest u-level at positive t-levels")
    s.set_defaults(handler=cmd_extremal)

    s = subs.add_parser("transfer", help="carry a search between balls by an affine map")
    _add_common(s, prec_default=5)
    s.add_argument("--poly", required=True)
    s.add_argument("--alpha", type=int, required=True, help="radius of the target ball")
    s.add_argument("--center-a", default="0", help="center of the target ball")
    s.add_argument("--beta", type=int, required=True, help="radius of the source ball")
    s.add_argument("--center-b", default="0", help="center of the source ball")
    s.add_argument("--scale", required=True, help="series c with v(c) = beta - alpha")
    s.set_defaults(handler=cmd_transfer)

    s = subs.add_parser("compose", help="rank-2 composite search vs residue-level search")
    _add_common(s, field=True, prec_default=4)
    s.add_argument("--poly", required=True, help="polynomial with coefficients in F_q((u))")
    s.add_argument("--prec-t", type=int, default=2)
    s.add_argument("--prec-u", type=int, default=2)
    s.add_argument("--u-floor", type=int, default=0)
    s.set_defaults(handler=cmd_compose)

    s = subs.add_parser("tmcne", help="non-equivalence certificate for an odd prime")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--prec", type=int, default=None)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(handler=cmd_tmcne)

    s = subs.add_parser("fundeq", help="fundamental equality n = e*fRes for an extension")
    s.add_argument("--poly", required=True)
    s.add_argument("--field", required=True, help="Q_p or F(q)((t))")
    s.add_argument("--prec", type=int, default=None)
    s.add_argument("--asserted", action="store_true", help="assert irreducibility externally")
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(handler=cmd_fundeq)

    s = subs.add_parser("selftest", help="seeded invariant suites for all layers")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--samples", type=int, default=300)
    s.add_argument("--json", metavar="PATH")
    s.set_defaults(handler=cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceededError as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CertificationError as exc:
        print(f"cannot certify: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except ValfieldError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
