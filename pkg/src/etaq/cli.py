"""Command-line interface.

Subcommands: expand, eta-order, cusp-expand, search, dual-pairs,
second-derivative, verify.  Output is deterministic for fixed flags
(collections sorted, rationals rendered p/q); --json switches from the
text rendering to machine-readable JSON.  Exit codes: 0 success or
verified, 1 verification failure (counterexample in the output),
2 usage error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .arith import prime_power
from .cusps import Cusp, check_order_bound, expansion_at_cusp
from .eisenstein import (
    EisensteinElement,
    parse_element,
    random_p_element,
    verify_identities,
)
from .eta import EtaQuotient, parse_eta
from .search import (
    classify_second_derivatives_level4,
    dual_pairs_prime_power,
    verify_classification_lists,
)

DEFAULT_LEVELS = "2,4,8,16,32,3,9,27,5,25,7,49"
DEFAULT_WEIGHTS = "2,4,6"


class UsageError(Exception):
    pass


def _parse_eta_arg(text: str, level: int | None) -> EtaQuotient:
    try:
        return parse_eta(text, level)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _parse_element_arg(text: str, level: int | None) -> EisensteinElement:
    try:
        return parse_element(text, level)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(payload, args) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_text(payload)


def _emit_text(payload, indent: str = "") -> None:
    if isinstance(payload, dict):
        for key in payload:
            value = payload[key]
            if isinstance(value, (dict, list)):
                print(f"{indent}{key}:")
                _emit_text(value, indent + "  ")
            else:
                print(f"{indent}{key}: {value}")
    elif isinstance(payload, list):
        for value in payload:
            if isinstance(value, (dict, list)):
                _emit_text(value, indent + "  ")
                print()
            else:
                print(f"{indent}{value}")
    else:
        print(f"{indent}{payload}")


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_expand(args) -> int:
    prec = args.prec
    if args.eta:
        quotient = _parse_eta_arg(args.eta, args.level)
        series = quotient.expansion(24 * prec + quotient.offset())
        payload = {
            "input": quotient.render(),
            "level": quotient.level,
            "weight": str(quotient.weight()),
            "series": series.render_text(),
            "scale": series.scale,
        }
    elif args.element:
        element = _parse_element_arg(args.element, args.level)
        series = element.expansion(prec)
        payload = {
            "input": element.render(),
            "level": element.level,
            "weight": element.k,
            "series": series.render_text(),
            "scale": series.scale,
        }
    else:
        raise UsageError("expand needs --eta or --element")
    if args.json:
        payload["coeffs"] = series.to_json_triples()
    _emit(payload, args)
    return 0


def cmd_eta_order(args) -> int:
    quotient = _parse_eta_arg(args.eta, args.level)
    report = quotient.is_modular_on_gamma0()
    payload = {
        "input": quotient.render(),
        "level": quotient.level,
        "weight": str(quotient.weight()),
        "orders": {str(c): str(v) for c, v in sorted(report.order_map.items())},
        "conditions": {name: ok for name, ok in report.conditions},
        "holomorphic_at_cusps": report.holomorphic_at_cusps,
        "modular": report.is_modular,
    }
    if prime_power(quotient.level) is not None:
        payload["total_cusp_order"] = str(quotient.total_cusp_order())
    _emit(payload, args)
    return 0


def _parse_cusp(text: str, level: int) -> Cusp:
    try:
        a_str, c_str = text.split("/")
        return Cusp(int(a_str), int(c_str), level)
    except ValueError as exc:
        raise UsageError(f"bad cusp {text!r}: {exc}") from exc


def cmd_cusp_expand(args) -> int:
    if not args.level:
        raise UsageError("cusp-expand needs --level")
    element = _parse_element_arg(args.element, args.level)
    cusp = _parse_cusp(args.cusp, args.level)
    expansion = expansion_at_cusp(element, cusp, args.prec)
    order = expansion.series.valuation()
    payload = {
        "element": element.render(),
        "cusp": cusp.label(),
        "width": cusp.width,
        "cyclotomic_order": expansion.cyc_order,
        "series": expansion.series.render_text(var="w"),
    }
    if order is None:
        payload["order"] = f"zero to precision {args.prec}"
    else:
        payload["order"] = order
        payload["leading_coeff"] = expansion.leading_coefficient().render()
    _emit(payload, args)
    return 0


def cmd_search(args) -> int:
    pp = prime_power(args.level)
    if pp is None:
        raise UsageError(f"search level must be a prime power, got {args.level}")
    p, m = pp
    if m == 0:
        p = 2
    from .search import enumerate_eta_in_e

    result = enumerate_eta_in_e(args.weight, p, m)
    if args.json:
        payload = result.to_json()
        payload["count"] = len(result.pairs)
        _emit(payload, args)
    else:
        print(f"eta quotients in the weight-{args.weight} span at level {args.level}: "
              f"{len(result.pairs)}")
        for sp in result.pairs:
            flag = "" if sp.eta_primitive else "   [eta-imprimitive]"
            print(f"  {sp.eta.render():48s} = {sp.element.render()}"
                  f"   (certified through q^{sp.certified_through}){flag}")
    return 0


def cmd_dual_pairs(args) -> int:
    pairs = dual_pairs_prime_power()
    if args.json:
        payload = {"count": len(pairs), "pairs": [dp.to_json() for dp in pairs]}
        _emit(payload, args)
    else:
        print(f"weight-(0,2) derivative pairs at prime-power levels: {len(pairs)}")
        for i, dp in enumerate(pairs, 1):
            print(f"  {i:2d}. f = {dp.f.render()}")
            print(f"      D(f) = {dp.scalar} * {dp.g.render()}")
    return 0 if len(pairs) == 12 else 1


def cmd_second_derivative(args) -> int:
    solutions = classify_second_derivatives_level4()
    if args.json:
        payload = {
            "count": len(solutions),
            "solutions": [sol.to_json() for sol in solutions],
        }
        _emit(payload, args)
    else:
        print(f"level-4 quotients with eta-quotient second derivative: {len(solutions)}")
        for sol in solutions:
            tag = "primitive" if sol.primitive else "rescaled"
            print(f"  r={sol.r}  f = {sol.f.render()}")
            print(f"      D^2(f) = {sol.scalar} * f * {sol.target.render()}   [{tag}]")
    return 0


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_identities(args) -> tuple[dict, bool]:
    checks = verify_identities(args.prec)
    ok = all(c.status in ("ok", "remainder") for c in checks)
    return {"identities": [c.to_json() for c in checks]}, ok


def _suite_classification(args) -> tuple[dict, bool]:
    report = verify_classification_lists()
    return {"classification": report.to_json()}, report.ok


def _suite_order_bounds(args) -> tuple[dict, bool]:
    levels = [int(x) for x in args.levels.split(",") if x]
    weights = [int(x) for x in args.weights.split(",") if x]
    failures = []
    checked = 0
    for k in weights:
        for n in levels:
            pp = prime_power(n)
            if pp is None:
                raise UsageError(f"order-bound levels must be prime powers, got {n}")
            p, m = pp
            rng = random.Random(f"{args.seed}:{k}:{n}")
            for _ in range(args.samples):
                element = random_p_element(rng, k, p, m)
                report = check_order_bound(element)
                checked += 1
                if not report.ok:
                    failures.append(report.to_json())
    payload = {
        "suite": "maingen",
        "samples": args.samples,
        "seed": args.seed,
        "weights": weights,
        "levels": levels,
        "checked": checked,
        "failures": failures,
    }
    return payload, not failures


def _suite_second_derivative(args) -> tuple[dict, bool]:
    # verifies the published uniqueness claim: the only solution family
    # should be r = (-4, 2, 0) and its rescalings.  The claim fails:
    # the extra certified solutions are emitted as counterexamples.
    solutions = classify_second_derivatives_level4()
    published = {(-4, 2, 0), (0, -4, 2)}
    extras = [sol.to_json() for sol in solutions if sol.r not in published]
    payload = {
        "solutions": [sol.to_json() for sol in solutions],
        "published_family": [list(r) for r in sorted(published)],
        "counterexamples": extras,
    }
    return payload, not extras


def cmd_verify(args) -> int:
    suites = {
        "identities": _suite_identities,
        "corollaries": _suite_classification,
        "maingen": _suite_order_bounds,
        "second-derivative": _suite_second_derivative,
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    payload = {}
    all_ok = True
    for name in names:
        part, ok = suites[name](args)
        payload.update(part)
        payload[f"{name}_ok"] = ok
        all_ok = all_ok and ok
    payload["ok"] = all_ok
    _emit(payload, args)
    return 0 if all_ok else 1


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="etaq",
        description="Exact q-series computations for eta quotients and "
        "Eisenstein series on Gamma0(N).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--json", action="store_true", help="machine-readable output")
        p.add_argument("--text", dest="json", action="store_false", help="text output (default)")

    p = sub.add_parser("expand", help="q-expansion of an eta quotient or Eisenstein element")
    p.add_argument("--eta", help="eta quotient, e.g. 'eta(2)^20*eta(1)^-8*eta(4)^-8'")
    p.add_argument("--element", help="Eisenstein combination, e.g. '8*E2(1)-32*E2(4)'")
    p.add_argument("--level", type=int, default=None)
    p.add_argument("--prec", type=int, default=10, help="number of q-exponents")
    common(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("eta-order", help="cusp orders and modularity of an eta quotient")
    p.add_argument("--eta", required=True)
    p.add_argument("--level", type=int, default=None)
    common(p)
    p.set_defaults(func=cmd_eta_order)

    p = sub.add_parser("cusp-expand", help="expansion of an Eisenstein element at a cusp")
    p.add_argument("--element", required=True)
    p.add_argument("--level", type=int, required=True)
    p.add_argument("--cusp", required=True, help="cusp a/c with c | level")
    p.add_argument("--prec", type=int, default=10)
    common(p)
    p.set_defaults(func=cmd_cusp_expand)

    p = sub.add_parser("search", help="eta quotients in the weight-k Eisenstein span")
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--level", type=int, required=True, help="prime power")
    common(p)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("dual-pairs", help="weight-(0,2) derivative pairs at prime-power levels")
    common(p)
    p.set_defaults(func=cmd_dual_pairs)

    p = sub.add_parser("second-derivative", help="level-4 quotients with eta-quotient D^2")
    common(p)
    p.set_defaults(func=cmd_second_derivative)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument(
        "--suite",
        choices=["identities", "corollaries", "maingen", "second-derivative", "all"],
        default="all",
    )
    p.add_argument("--prec", type=int, default=None, help="identity-suite precision override")
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--levels", default=DEFAULT_LEVELS)
    p.add_argument("--weights", default=DEFAULT_WEIGHTS)
    common(p)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
