"""Command-line front end.

Subcommands::

    dunklinv canonical --group I2:5 --a 0,2 [--format json|plain|latex]
                       [--params symbolic|1/3[,1/5]] [--equal]
    dunklinv verify --suite commute[,sl2,...] --group Sn:4
                    [--max-degree D] [--order K] [--seed S]
    dunklinv limit --group Sn:4 --degree 4 --at 1/4

Exit codes: 0 success, 1 a verification suite failed, 2 bad input
(unparseable flags, unknown suite, suite not applicable), 3 internal
consistency failure, 4 pole.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import Sequence

from .dunkl import DunklContext, InternalConsistencyError
from .groups import ReflectionGroup, parse_group
from .invariants import (
    GeneratorSet,
    SingularGramError,
    canonical_invariant,
    elementary_invariant,
    limit_at,
)
from .polyring import Poly
from .scalars import PoleError, RatFun, format_scalar, parse_rational, ratfun_eval
from .suites import SUITES, SuiteNotApplicable, run_suite

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_INTERNAL = 3
EXIT_POLE = 4


class UsageError(ValueError):
    pass


# ------------------------------------------------------------ parsing


def _parse_a(text: str) -> tuple[int, ...]:
    try:
        a = tuple(int(t) for t in text.split(","))
    except ValueError:
        raise UsageError(f"--a expects comma-separated integers, got {text!r}") from None
    if any(x < 0 for x in a):
        raise UsageError("--a entries must be nonnegative")
    return a


def _parse_params(text: str | None, group: ReflectionGroup) -> dict | None:
    """None for symbolic mode, else a map parameter -> Fraction."""
    if text is None or text.strip() == "symbolic":
        return None
    items = [t.strip() for t in text.split(",") if t.strip()]
    names = group.params
    point = {}
    try:
        if all("=" in t for t in items):
            for t in items:
                k, v = t.split("=", 1)
                point[k.strip()] = parse_rational(v.strip())
        else:
            if len(items) == 1:
                items = items * len(names)
            if len(items) != len(names):
                raise UsageError(f"--params needs {len(names)} values for {names}")
            point = {k: parse_rational(v) for k, v in zip(names, items)}
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --params value {text!r}: {exc}") from None
    if set(point) != set(names):
        raise UsageError(f"--params must assign exactly {list(names)}")
    return point


def _group(args) -> ReflectionGroup:
    try:
        return parse_group(args.group, equal=getattr(args, "equal", False))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def generator_names(group: ReflectionGroup) -> list[str]:
    if group.kind == "S":
        return [f"e{k}" for k in range(1, group.order_param + 1)]
    return ["e2", f"e{group.order_param}"]


# ------------------------------------------------------------ rendering


def _monomial_text(a, names, style: str) -> str:
    parts = []
    for name, k in zip(names, a):
        if not k:
            continue
        if style == "latex":
            base = f"{name[0]}_{{{name[1:]}}}"
            parts.append(base if k == 1 else f"{base}^{{{k}}}")
        else:
            parts.append(name if k == 1 else f"{name}^{k}")
    if not parts:
        return "1"
    return (" " if style == "latex" else "*").join(parts)


_POW = re.compile(r"\^(\d+)")


def _latex_scalar(text: str) -> str:
    text = _POW.sub(r"^{\1}", text).replace("*", " ")
    m = re.fullmatch(r"\((.*)\)/\((.*)\)", text)
    if m:
        return rf"\frac{{{m.group(1)}}}{{{m.group(2)}}}"
    m = re.fullmatch(r"(-?)(\d+)/(\d+)", text)
    if m:
        return rf"{m.group(1)}\frac{{{m.group(2)}}}{{{m.group(3)}}}"
    return text


def render_canonical(report: dict, style: str) -> str:
    if style == "json":
        return json.dumps(report)
    names = report["generators"]
    label = ",".join(str(x) for x in report["a"])
    pieces = []
    for t in report["expansion"]:
        mono = _monomial_text(t["a"], names, style)
        coef = t["coef"]
        if style == "latex":
            c = _latex_scalar(coef)
            pieces.append(mono if coef == "1" else rf"\left({c}\right) {mono}")
        else:
            pieces.append(mono if coef == "1" else f"({coef})*{mono}")
    if style == "latex":
        return rf"b_{{({label})}} = " + " + ".join(pieces)
    return f"b_({label}) = " + " + ".join(pieces)


# ------------------------------------------------------------ commands


def cmd_canonical(group: ReflectionGroup, a: Sequence[int], params: dict | None = None) -> dict:
    """Compute b_a for the elementary generators; with ``params`` the
    symbolic result is specialized coefficientwise."""
    gens = GeneratorSet.elementary(group)
    if len(a) != len(gens):
        raise UsageError(f"--a must have {len(gens)} entries for {group.spec}")
    ctx = DunklContext(group)
    inv = canonical_invariant(a, gens, ctx)
    expansion = []
    for a2, coef in inv.terms():
        if params is not None and isinstance(coef, RatFun):
            coef = ratfun_eval(coef, params)
        expansion.append({"a": list(a2), "coef": format_scalar(coef)})
    poly = inv.poly if params is None else inv.poly.eval_params(params)
    return {
        "group": group.spec,
        "a": list(a),
        "degree": inv.degree,
        "generators": generator_names(group),
        "generator_degrees": list(gens.degrees),
        "params": list(group.params) if params is None
        else {k: format_scalar(v) for k, v in params.items()},
        "normalization": inv.normalization,
        "expansion": expansion,
        "poly": poly.to_json_obj(),
    }


def cmd_verify(suites: Sequence[str], group: ReflectionGroup, max_degree=None,
               order=None, seed=0, skip_inapplicable=False) -> list[dict]:
    """Run suites; reports are ordered by suite name.  A suite that does not
    apply to the group is a usage error unless ``skip_inapplicable``."""
    unknown = [s for s in suites if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite(s) {unknown}; choose from {sorted(SUITES)}")
    out = []
    for name in sorted(set(suites)):
        try:
            out.append(run_suite(name, group, max_degree=max_degree, order=order, seed=seed))
        except SuiteNotApplicable as exc:
            if skip_inapplicable:
                continue
            raise UsageError(f"{name}: {exc}") from None
    return out


def cmd_limit(group: ReflectionGroup, degree: int, at: Fraction) -> Poly:
    gens = GeneratorSet.elementary(group)
    ctx = DunklContext(group)
    try:
        inv = elementary_invariant(degree, gens, ctx)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return limit_at(inv, at)


def _pole_report(exc: PoleError, extra: dict) -> dict:
    den = exc.denominator
    return {"error": "pole", "message": str(exc),
            "denominator": None if den is None else str(den), **extra}


# ------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dunklinv",
                                description="Dunkl operators and canonical invariants")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("canonical", help="compute a canonical invariant b_a")
    c.add_argument("--group", required=True, help="Sn:<n> or I2:<m>")
    c.add_argument("--a", required=True, help="exponent vector, e.g. 0,2")
    c.add_argument("--format", choices=("json", "plain", "latex"), default="json")
    c.add_argument("--params", default="symbolic",
                   help="'symbolic' or rational values in parameter order (or name=value)")
    c.add_argument("--equal", action="store_true",
                   help="dihedral groups with even m: one parameter for both classes")

    v = sub.add_parser("verify", help="run verification suites")
    v.add_argument("--suite", required=True, action="append",
                   help=f"comma-separated; one of {', '.join(sorted(SUITES))} or 'all'")
    v.add_argument("--group", required=True)
    v.add_argument("--max-degree", type=int, default=None)
    v.add_argument("--order", type=int, default=None, help="truncation order K")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--format", choices=("json", "plain"), default="json")

    lim = sub.add_parser("limit", help="specialize an elementary canonical invariant")
    lim.add_argument("--group", required=True)
    lim.add_argument("--degree", type=int, required=True)
    lim.add_argument("--at", required=True, help="rational value of the parameter")
    lim.add_argument("--format", choices=("json", "plain"), default="json")
    return p


def _emit(text: str, stream=None):
    print(text, file=stream or sys.stdout)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with 2 on bad flags
    try:
        group = _group(args)
        if args.command == "canonical":
            params = _parse_params(args.params, group)
            try:
                report = cmd_canonical(group, _parse_a(args.a), params)
            except PoleError as exc:
                _emit(json.dumps(_pole_report(exc, {"group": group.spec, "a": list(_parse_a(args.a))})))
                return EXIT_POLE
            _emit(render_canonical(report, args.format))
            return EXIT_OK

        if args.command == "verify":
            names = [s.strip() for arg in args.suite for s in arg.split(",") if s.strip()]
            every = "all" in names
            if every:
                names = list(SUITES)
            reports = cmd_verify(names, group, args.max_degree, args.order, args.seed,
                                 skip_inapplicable=every)
            if args.format == "plain":
                for r in reports:
                    status = "PASS" if not r["failures"] else "FAIL"
                    _emit(f"{status} {r['suite']}: {r['cases']} cases, "
                          f"{len(r['failures'])} failures")
            else:
                _emit(json.dumps(reports[0] if len(reports) == 1 else reports))
            return EXIT_OK if all(not r["failures"] for r in reports) else EXIT_VERIFY_FAILED

        # limit
        try:
            at = parse_rational(args.at)
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"--at expects a rational, got {args.at!r}") from None
        try:
            poly = cmd_limit(group, args.degree, at)
        except PoleError as exc:
            _emit(json.dumps(_pole_report(exc, {"group": group.spec, "degree": args.degree,
                                                "at": format_scalar(at)})))
            return EXIT_POLE
        _emit(poly.to_json() if args.format == "json" else str(poly))
        return EXIT_OK
    except UsageError as exc:
        _emit(f"dunklinv: error: {exc}", sys.stderr)
        return EXIT_USAGE
    except (InternalConsistencyError, SingularGramError) as exc:
        _emit(f"dunklinv: internal consistency failure: {exc}", sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
