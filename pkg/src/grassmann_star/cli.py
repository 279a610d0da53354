"""Command-line entry point: ``grassmann-star <command> ...``.

Exit codes: 0 success, 1 a check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import covariance as cov
from .boson import DEFAULT_CUTOFF
from .expr import EvalConfig, EvalError, ParseError, evaluate, parse, to_source
from .fock import oracle_star
from .grassmann import GrassmannElement, loads, random_element, to_json_dict
from .star import Product, StarKind, star
from .suites import SUITES, SuiteOptions, run_suite
from .susy import SuperSymbol, from_grassmann, super_star
from .susy import to_json_dict as super_json

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

SUITE_ALIASES = {"fermion-oscillator": "oscillator"}

_DEFAULTS = {"n": 1, "hbar": 1.0, "product": "coherent", "cutoff": DEFAULT_CUTOFF, "seed": 0, "json": False}


def _global_flags(defaults: bool) -> argparse.ArgumentParser:
    # flags are accepted before or after the subcommand; only the top level sets defaults
    p = argparse.ArgumentParser(add_help=False, argument_default=None if defaults else argparse.SUPPRESS)
    kw = (lambda k: {"default": _DEFAULTS[k]}) if defaults else (lambda k: {})
    p.add_argument("--n", type=int, help="number of fermionic modes (default 1)", **kw("n"))
    p.add_argument("--hbar", type=float, help="deformation parameter (default 1)", **kw("hbar"))
    p.add_argument("--product", choices=[p.value for p in Product], help="star product behind '@'", **kw("product"))
    p.add_argument("--cutoff", type=int, help=f"bosonic Fock cutoff (default {DEFAULT_CUTOFF})", **kw("cutoff"))
    p.add_argument("--seed", type=int, help="random seed for sampled checks", **kw("seed"))
    p.add_argument("--json", action="store_true", help="machine-readable output", **kw("json"))
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grassmann-star",
        description="Star products on Grassmann, bosonic and super symbols.",
        parents=[_global_flags(True)],
    )
    common = _global_flags(False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate an expression")
    p.add_argument("expr")

    p = sub.add_parser("star", parents=[common], help="star-multiply two expressions")
    p.add_argument("left")
    p.add_argument("right")

    p = sub.add_parser("check", parents=[common], help="run a check suite")
    p.add_argument("suite", choices=list(SUITES) + list(SUITE_ALIASES))
    p.add_argument("--samples", type=int, default=50, help="random samples per sampled check")

    p = sub.add_parser("bogoliubov", parents=[common], help="U, V matrices for an antisymmetric alpha")
    p.add_argument("--alpha", help="JSON matrix; entries are numbers or [re, im] pairs (default: random)")
    p.add_argument("--check-covariance", metavar="ELEMENT",
                   help="Grassmann element JSON (file path or inline) to test for covariance")

    p = sub.add_parser("oracle-compare", parents=[common], help="star product against the Fock-space oracle")
    p.add_argument("left", nargs="?", help="expression; omit both to compare random pairs")
    p.add_argument("right", nargs="?")
    p.add_argument("--trials", type=int, default=100, help="random pairs when no expressions are given")
    return parser


class UsageError(Exception):
    pass


def _config(args) -> EvalConfig:
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    return EvalConfig(n=args.n, kind=StarKind(Product(args.product), args.hbar))


def _value_json(v) -> dict:
    if isinstance(v, SuperSymbol):
        return super_json(v)
    return to_json_dict(v)


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload) if args.json else text)


def cmd_eval(args) -> int:
    config = _config(args)
    ast = parse(args.expr, config.n)
    value = evaluate(ast, config)
    _emit(args, {"expr": to_source(ast), "value": _value_json(value)}, str(value))
    return EXIT_OK


def cmd_star(args) -> int:
    config = _config(args)
    a = evaluate(parse(args.left, config.n), config)
    b = evaluate(parse(args.right, config.n), config)
    if isinstance(a, SuperSymbol) != isinstance(b, SuperSymbol):
        a, b = (from_grassmann(x) if isinstance(x, GrassmannElement) else x for x in (a, b))
    value = super_star(a, b, config.kind) if isinstance(a, SuperSymbol) else star(a, b, config.kind)
    _emit(args, {"value": _value_json(value)}, str(value))
    return EXIT_OK


def cmd_check(args) -> int:
    name = SUITE_ALIASES.get(args.suite, args.suite)
    opts = SuiteOptions(n=args.n, hbar=args.hbar, product=args.product, cutoff=args.cutoff,
                        seed=args.seed, samples=args.samples)
    code, report = run_suite(name, opts)
    if args.json:
        print(report.to_json(indent=2))
    else:
        for c in sorted(report.checks, key=lambda c: c.id):
            status = "PASS" if c.passed else ("info" if c.informational else "FAIL")
            print(f"{status:4}  {c.id:50} {c.residual:10.3e}  {c.paper_eq}")
        print(f"{report.suite}: {'pass' if code == 0 else 'FAIL'}")
    return code


def _parse_alpha(text: str) -> np.ndarray:
    raw = json.loads(text)
    return np.array([[complex(*x) if isinstance(x, list) else complex(x) for x in row] for row in raw])


def _cjson(M: np.ndarray) -> list:
    return [[[float(v.real), float(v.imag)] for v in row] for row in M]


def _load_element(text: str) -> GrassmannElement:
    source = text if text.lstrip().startswith("{") else Path(text).read_text()
    return loads(source)


def cmd_bogoliubov(args) -> int:
    if args.alpha is None:
        alpha = cov.random_alpha(max(args.n, 2), np.random.default_rng(args.seed), 0.5)
    else:
        try:
            alpha = cov.check_alpha(_parse_alpha(args.alpha))
        except (ValueError, TypeError, json.JSONDecodeError) as exc:
            raise UsageError(f"--alpha: {exc}") from exc
    pair = cov.bogoliubov_from_alpha(alpha)
    canonical = pair.canonical_residual()
    oracle = cov.bogoliubov_oracle_residual(alpha)
    ok = canonical <= 1e-10 and oracle <= 1e-10
    payload = {"alpha": _cjson(alpha), "U": _cjson(pair.U), "V": _cjson(pair.V),
               "canonical_residual": canonical, "oracle_residual": oracle}
    with np.printoptions(precision=6, suppress=True):
        text = (f"U =\n{pair.U}\nV =\n{pair.V}\n"
                f"canonical residual {canonical:.3e}, oracle residual {oracle:.3e}")
    if args.check_covariance is not None:
        try:
            element = _load_element(args.check_covariance)
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"--check-covariance: {exc}") from exc
        if element.n != alpha.shape[0]:
            raise UsageError(f"element has N={element.n} but alpha is {alpha.shape[0]}x{alpha.shape[0]}")
        kind = StarKind(Product(args.product), args.hbar)
        residual = cov.covariance_residual(alpha, kind, [element])
        payload["covariance_residual"] = residual
        text += f"\ncovariance residual ({kind.product.value}) {residual:.3e}"
        ok = ok and residual <= 1e-10
    payload["pass"] = ok
    _emit(args, payload, text)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_oracle_compare(args) -> int:
    config = _config(args)
    if config.kind != StarKind(Product.COHERENT, 1.0):
        raise UsageError("the Fock-space oracle realises the coherent product at hbar = 1")
    if (args.left is None) != (args.right is None):
        raise UsageError("give two expressions or none")
    if args.left is None:
        rng = np.random.default_rng(args.seed)
        worst = 0.0
        for _ in range(args.trials):
            a, b = random_element(config.n, rng), random_element(config.n, rng)
            worst = max(worst, (star(a, b) - oracle_star(a, b)).norm())
        ok = worst <= 1e-12
        _emit(args, {"max_residual": worst, "trials": args.trials, "pass": ok},
              f"{args.trials} random pairs at N={config.n}: max residual {worst:.3e}")
        return EXIT_OK if ok else EXIT_FAIL
    fermionic = EvalConfig(config.n, config.kind, super=False)
    a = evaluate(parse(args.left, config.n), fermionic)
    b = evaluate(parse(args.right, config.n), fermionic)
    got, want = star(a, b), oracle_star(a, b)
    residual = (got - want).norm()
    ok = residual <= 1e-12
    _emit(args, {"star": to_json_dict(got), "oracle": to_json_dict(want), "residual": residual, "pass": ok},
          f"star   {got}\noracle {want}\nresidual {residual:.3e}")
    return EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "eval": cmd_eval,
    "star": cmd_star,
    "check": cmd_check,
    "bogoliubov": cmd_bogoliubov,
    "oracle-compare": cmd_oracle_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except (ParseError, EvalError, UsageError, ValueError) as exc:
        # ValueError covers e.g. a negative --hbar rejected by StarKind
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
