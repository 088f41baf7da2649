"""Command-line entry point: ``complexcf expand|analyze|verify|certify|oracle``."""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import errors
from .algorithms import parse_algorithm
from .approximation import ENUM_LIMIT, badly_approximable_assess, best_approx_oracle, certify_bad_circle
from .arithmetic.ball import BallComplex, BallSource
from .arithmetic.kfield import parse_k
from .arithmetic.surd import QuadraticSurd, surd_from_poly
from .corpus import parse_corpus_spec
from .expansion import EXACT_BUDGET, MAX_PREC, check_condition_H, check_monotone, neat_subset, run
from .forms import SigmaForm, orbit_along, quotient_bound_from_orbit
from .rings import G, ring_by_name
from .suites import GEOMETRY_CHECKS, SUITES, run_geometry, run_suite

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_PRECISION = 3
EXIT_HYPOTHESIS = 4
EXIT_LIMIT = 5

DEFAULTS: dict[str, Any] = {
    "ring": "G",
    "alg": None,
    "steps": None,
    "max_prec": MAX_PREC,
    "enum_limit": ENUM_LIMIT,
    "format": "json",
    "corpus": "surds:100",
    "workers": 1,
}

_INPUT_ERRORS = (
    ValueError,
    errors.WrongRing,
    errors.ReduciblePolynomial,
    errors.ZeroLeadingCoefficient,
    errors.ParameterOutOfRange,
    errors.NotInTargetSet,
    errors.ContainsZero,
    errors.Unsupported,
    errors.IncomparableDiscriminants,
)
_HYPOTHESIS_ERRORS = (errors.HypothesisFailed, errors.NotAZero, errors.MonotonicityRequired)
_LIMIT_ERRORS = (errors.EnumerationLimit, errors.FactorizationBudget)


class InputError(Exception):
    pass


# -- configuration ------------------------------------------------------------------------------


def load_config(path: str | None) -> dict[str, Any]:
    cfg = dict(DEFAULTS)
    if path is None:
        return cfg
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config file must hold a JSON object")
    unknown = set(data) - set(DEFAULTS)
    if unknown:
        raise InputError(f"unknown config keys: {sorted(unknown)}")
    cfg.update(data)
    return cfg


def merged_config(args: argparse.Namespace) -> dict[str, Any]:
    """Config file values, overridden by any flag given on the command line."""
    cfg = load_config(getattr(args, "config", None))
    for key in DEFAULTS:
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    for key in ("steps", "max_prec", "enum_limit", "workers"):
        if cfg[key] is not None and int(cfg[key]) <= 0:
            raise InputError(f"{key} must be positive")
    return cfg


# -- input parsing -----------------------------------------------------------------------------


def parse_poly(ring: Any, text: str) -> list:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != 3:
        raise InputError("--poly takes three comma-separated coefficients a,b,c")
    return [parse_k(ring, p).to_ring() for p in parts]


def parse_ball(ring: Any, text: str) -> BallSource:
    """``'x+yi@r'`` (decimals or fractions) as a fixed ball source."""
    body, _, rad = text.replace(" ", "").partition("@")
    if not body.endswith("i"):
        raise InputError("--ball expects x+yi@r")
    body = body[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    while cut > 0 and body[cut - 1] in "eE":
        cut = max(body.rfind("+", 0, cut), body.rfind("-", 0, cut))
    if cut <= 0:
        raise InputError("--ball expects x+yi@r")
    try:
        re_, im_ = Fraction(body[:cut]), Fraction(body[cut:])
        r = Fraction(rad) if rad else Fraction(0)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot read ball {text!r}") from exc
    if r < 0:
        raise InputError("ball radius must be nonnegative")
    prec = 64 if r == 0 else max(64, (r.denominator // max(r.numerator, 1)).bit_length() + 16)
    return BallSource.of_ball(BallComplex.from_reim(ring, re_, im_, r, prec), label=text)


def read_input(args: argparse.Namespace, ring: Any) -> Any:
    given = [x for x in ("poly", "ball", "z") if getattr(args, x, None)]
    if len(given) != 1:
        raise InputError("give exactly one of --poly, --ball, --z")
    if args.poly:
        a, b, c = parse_poly(ring, args.poly)
        return surd_from_poly(a, b, c, branch=args.branch, ring=ring)
    if args.ball:
        return parse_ball(ring, args.ball)
    try:
        obj = json.loads(Path(args.z).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {args.z}: {exc}") from exc
    obj = obj.get("surd", obj)
    return QuadraticSurd.from_json(obj)


def _algorithm(cfg: dict, ring: Any) -> Any:
    name = cfg["alg"] or ("eisenstein" if ring.code == "E" else "hurwitz")
    alg = parse_algorithm(name)
    if alg.ring is not ring:
        raise InputError(f"algorithm {name} works over {alg.ring.code}, not {ring.code}")
    return alg


# -- output ------------------------------------------------------------------------------------


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def dump(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- commands ----------------------------------------------------------------------------------


def cmd_expand(args: argparse.Namespace) -> int:
    cfg = merged_config(args)
    ring = ring_by_name(cfg["ring"])
    z = read_input(args, ring)
    alg = _algorithm(cfg, ring)
    steps = int(cfg["steps"] or (EXACT_BUDGET if isinstance(z, QuadraticSurd) else 50))
    tr = run(z, alg, steps, stop_at_period=args.stop_at_period, max_prec=int(cfg["max_prec"]))
    fmt = cfg["format"]
    if fmt == "jsonl":
        emit(json.dumps({"type": "config", **cfg}, sort_keys=True) + "\n" + tr.to_jsonl(), args.out)
    elif fmt == "csv":
        emit(tr.to_csv(), args.out)
    else:
        emit(dump({"config": cfg, **tr.to_json()}), args.out)
    # the partial trace is still written; the code tells scripts it stopped early
    return EXIT_PRECISION if tr.termination == "precision_exhausted" else EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    cfg = merged_config(args)
    ring = ring_by_name(cfg["ring"])
    z = read_input(args, ring)
    alg = _algorithm(cfg, ring)
    steps = int(cfg["steps"] or (EXACT_BUDGET if isinstance(z, QuadraticSurd) else 50))
    exact = isinstance(z, QuadraticSurd)
    tr = run(z, alg, steps, stop_at_period=exact, max_prec=int(cfg["max_prec"]))
    if exact and tr.period is not None:
        n0, k = tr.period
        tr = run(z, alg, min(steps, max(n0 - 1, 0) + 2 * k + 2))
    report: dict[str, Any] = {"config": cfg, "termination": tr.termination, "steps": len(tr.steps),
                              "period": None if tr.period is None else {"n0": tr.period[0], "k": tr.period[1]}}
    report["monotone"] = check_monotone(tr).to_json()
    if ring is G:
        report["conditionH"] = check_condition_H(tr).to_json()
    report["neat"] = neat_subset(tr, 2).to_json()
    report["badly_approximable"] = badly_approximable_assess(tr).to_json()
    form = None
    if args.form:
        a, b, c = (parse_k(ring, p) for p in args.form.split(","))
        form = SigmaForm.hermitian(a, b, c, ring)
    elif exact:
        form = SigmaForm.from_surd(z)
    if form is not None:
        report["orbit"] = orbit_along(tr, form).to_json()
        if form.sigma != "conj":
            report["quotient_bound"] = {"skipped": "defined for Hermitian forms; pass --form"}
            emit(dump(report), args.out)
            return EXIT_OK
        try:
            report["quotient_bound"] = quotient_bound_from_orbit(tr, form).to_json()
        except errors.MonotonicityRequired as exc:
            report["quotient_bound"] = {"skipped": str(exc)}
    emit(dump(report), args.out)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = merged_config(args)
    if args.suite == "geometry":
        check = args.check or "hurwitz"
        report = run_geometry(check, args.r, mesh=args.mesh, samples=args.samples, seed=args.seed)
    else:
        alg = parse_algorithm(cfg["alg"] or "hurwitz")
        count, seed = parse_corpus_spec(cfg["corpus"])
        steps = int(cfg["steps"] or EXACT_BUDGET)
        report = run_suite(args.suite, alg, count, seed, steps, int(cfg["workers"]))
    emit(dump({"config": cfg, **report.to_json()}), args.out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_certify(args: argparse.Namespace) -> int:
    cfg = merged_config(args)
    ring = ring_by_name(cfg["ring"])
    center = parse_k(ring, args.center) if args.center else 0
    v = certify_bad_circle(center, Fraction(args.r2), ring)
    emit(dump({"config": cfg, **v.to_json()}), args.out)
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    cfg = merged_config(args)
    ring = ring_by_name(cfg["ring"])
    z = read_input(args, ring)
    rows = best_approx_oracle(z, args.qmax, ring=z.ring, limit=int(cfg["enum_limit"]))
    emit(dump({"config": cfg, "input": z.to_json() if hasattr(z, "to_json") else str(z), "qmax": args.qmax,
               "rows": [r.to_json() for r in rows]}), args.out)
    return EXIT_OK


# -- parser ------------------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="JSON file of defaults; flags win")
    p.add_argument("--ring", choices=["G", "E", "S2", "S7", "S11"])
    p.add_argument("--out", help="write the report here instead of stdout")


def _inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("--poly", help="coefficients a,b,c of a z^2 + b z + c")
    p.add_argument("--branch", default="plus", choices=["plus", "minus"])
    p.add_argument("--ball", help="x+yi@r")
    p.add_argument("--z", help="surd JSON file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="complexcf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a surd or ball")
    _common(p)
    _inputs(p)
    p.add_argument("--alg")
    p.add_argument("--steps", type=int)
    p.add_argument("--max-prec", dest="max_prec", type=int)
    p.add_argument("--format", choices=["json", "jsonl", "csv"])
    p.add_argument("--stop-at-period", action="store_true")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("analyze", help="monotonicity, neat subset, forms and approximation report")
    _common(p)
    _inputs(p)
    p.add_argument("--alg")
    p.add_argument("--steps", type=int)
    p.add_argument("--max-prec", dest="max_prec", type=int)
    p.add_argument("--form", help="Hermitian form a,b,c meaning a|z|^2 + 2Re(conj(b) z) + c")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="run a verification suite")
    _common(p)
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--alg")
    p.add_argument("--corpus", help="surds:N[:seed=S]")
    p.add_argument("--steps", type=int)
    p.add_argument("--workers", type=int)
    p.add_argument("--check", choices=GEOMETRY_CHECKS)
    p.add_argument("--r", type=Fraction)
    p.add_argument("--mesh", type=int, default=80)
    p.add_argument("--samples", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)

    for name in ("certify", "bad-circle"):
        p = sub.add_parser(name, help="decide whether a circle is badly approximable")
        _common(p)
        p.add_argument("--r2", required=True, type=Fraction)
        p.add_argument("--center")
        p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oracle", help="brute-force best approximations")
    _common(p)
    _inputs(p)
    p.add_argument("--qmax", type=int, required=True)
    p.add_argument("--enum-limit", dest="enum_limit", type=int)
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except errors.PrecisionExhausted as exc:
        code, msg = EXIT_PRECISION, exc
    except _HYPOTHESIS_ERRORS as exc:
        code, msg = EXIT_HYPOTHESIS, exc
    except _LIMIT_ERRORS as exc:
        code, msg = EXIT_LIMIT, exc
    except (InputError, *_INPUT_ERRORS) as exc:
        code, msg = EXIT_INPUT, exc
    except errors.ComplexCFError as exc:
        code, msg = EXIT_INPUT, exc
    print(f"complexcf: {type(msg).__name__}: {msg}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
