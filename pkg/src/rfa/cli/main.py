"""Command-line front end.

Subcommands: ``eval``, ``derive``, ``integrate``, ``solve``, ``preset`` and
``phase``.  Exit codes: 0 on success, 2 for parse or configuration errors,
3 for numeric failures (division by zero, log of zero, integration aborts,
overflow), 4 for I/O failures.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace

from ..analytic import Path, contour_integral, derivative_cr
from ..core import BasisNumber, LcNumber
from ..dynamics import IntegrationAbort
from .expressions import ExprError, eval_expression
from .literals import LiteralError, parse_fuzzy_literal, print_literal
from .presets import ConfigError, load_config, preset_config, run_scenario

__all__ = ["main"]


def _parse_bindings(pairs):
    env = {}
    for pair in pairs or ():
        name, sep, literal = pair.partition("=")
        if not sep or not name:
            raise ConfigError(f"bindings must look like name=literal, got {pair!r}")
        value = parse_fuzzy_literal(literal)
        if not isinstance(value, LcNumber):
            raise ConfigError(f"binding {name!r} must be an element literal")
        env[name.strip()] = value
    return env


def _resolve_a1(basis_text):
    if basis_text is None:
        return 0.0
    basis = parse_fuzzy_literal(basis_text)
    if not isinstance(basis, BasisNumber):
        raise ConfigError("--basis must be a tri(...) or trap(...) literal")
    try:
        return basis.one_level_value()
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc


def _formats(text):
    if text is None:
        return None
    return tuple(part.strip() for part in text.split(",") if part.strip())


def _cmd_eval(args) -> int:
    env = _parse_bindings(args.bind)
    result = eval_expression(args.expr, env, a1=_resolve_a1(args.basis))
    print(print_literal(result))
    return 0


def _cmd_derive(args) -> int:
    env = _parse_bindings(args.bind)
    a1 = _resolve_a1(args.basis)
    at = parse_fuzzy_literal(args.at)
    if not isinstance(at, LcNumber):
        raise ConfigError("--at must be an element literal")

    def mapping(z):
        return eval_expression(args.expr, {**env, "z": z}, a1=a1)

    report = derivative_cr(mapping, at, h=args.step)
    print(f"derivative = {print_literal(report.derivative)}")
    print(f"cr_residual1 = {report.residual1:.6e}")
    print(f"cr_residual2 = {report.residual2:.6e}")
    return 0


def _cmd_integrate(args) -> int:
    env = _parse_bindings(args.bind)
    a1 = _resolve_a1(args.basis)
    vertices = []
    for part in args.path.split(","):
        vertex = parse_fuzzy_literal(part)
        if not isinstance(vertex, LcNumber):
            raise ConfigError("path vertices must be element literals")
        vertices.append(vertex)
    if len(vertices) < 2:
        raise ConfigError("an integration path needs at least two vertices")

    def mapping(z):
        return eval_expression(args.expr, {**env, "z": z}, a1=a1)

    path = Path.polyline(vertices, samples=args.samples)
    print(print_literal(contour_integral(mapping, path, scheme=args.scheme)))
    return 0


def _run_and_report(cfg, args) -> int:
    _, written = run_scenario(cfg, out_dir=args.out_dir, formats=_formats(args.formats))
    for target in written:
        print(target)
    return 0


def _cmd_solve(args) -> int:
    cfg = load_config(args.config)
    wanted = {"linear": "linear", "linear-psi": "linear_psi", "oscillator": "oscillator", "lv": "lotka_volterra"}[args.system]
    if cfg.system != wanted:
        raise ConfigError(f"config declares system {cfg.system!r} but the command asked for {wanted!r}")
    return _run_and_report(cfg, args)


def _cmd_preset(args) -> int:
    return _run_and_report(preset_config(args.fig), args)


def _cmd_phase(args) -> int:
    if (args.preset is None) == (args.config is None):
        raise ConfigError("phase needs exactly one of --preset or --config")
    cfg = preset_config(args.preset) if args.preset else load_config(args.config)
    cfg = replace(cfg, plot=f"phase:{args.projection}", name=f"{cfg.name}-phase")
    return _run_and_report(cfg, args)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rfa",
        description="calculus and dynamics on linearly correlated fuzzy numbers",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_expr_options(p):
        p.add_argument("--basis", help="basis literal, e.g. 'tri(-0.5;0;0.51)'")
        p.add_argument(
            "--bind",
            action="append",
            metavar="NAME=LITERAL",
            help="bind a variable (repeatable)",
        )

    p_eval = sub.add_parser("eval", help="evaluate an expression")
    p_eval.add_argument("expr")
    add_expr_options(p_eval)
    p_eval.set_defaults(handler=_cmd_eval)

    p_derive = sub.add_parser("derive", help="finite-difference derivative of an expression in z")
    p_derive.add_argument("expr")
    p_derive.add_argument("--at", required=True, help="element literal to differentiate at")
    p_derive.add_argument("--step", type=float, default=1e-5)
    add_expr_options(p_derive)
    p_derive.set_defaults(handler=_cmd_derive)

    p_int = sub.add_parser("integrate", help="contour integral of an expression in z")
    p_int.add_argument("expr")
    p_int.add_argument("--path", required=True, help="comma-separated element literals")
    p_int.add_argument("--samples", type=int, default=10001)
    p_int.add_argument("--scheme", choices=("trapezoid", "simpson"), default="trapezoid")
    add_expr_options(p_int)
    p_int.set_defaults(handler=_cmd_integrate)

    def add_output_options(p):
        p.add_argument("--out-dir", help="output directory (default $RFA_OUT_DIR or ./rfa_out)")
        p.add_argument("--formats", help="comma-separated subset of csv,json,svg")

    p_solve = sub.add_parser("solve", help="run a configured scenario")
    p_solve.add_argument("system", choices=("linear", "linear-psi", "oscillator", "lv"))
    p_solve.add_argument("--config", required=True)
    add_output_options(p_solve)
    p_solve.set_defaults(handler=_cmd_solve)

    p_preset = sub.add_parser("preset", help="run a built-in figure preset (fig2..fig16)")
    p_preset.add_argument("fig")
    add_output_options(p_preset)
    p_preset.set_defaults(handler=_cmd_preset)

    p_phase = sub.add_parser("phase", help="phase portrait of a preset or configured run")
    p_phase.add_argument("--preset")
    p_phase.add_argument("--config")
    p_phase.add_argument("--projection", required=True, choices=("x-vs-s", "r-vs-y"))
    add_output_options(p_phase)
    p_phase.set_defaults(handler=_cmd_phase)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except (LiteralError, ExprError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ZeroDivisionError, OverflowError, IntegrationAbort, ArithmeticError, ValueError) as exc:
        print(f"numeric error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
