"""Command-line front end.

Every subcommand is batch: read flags, compute, print one report, exit.
Reports carry exact rationals serialized as "p/q" (or "p" for integers)
and are byte-identical across runs for identical inputs in JSON mode.

Exit codes: 0 success, 2 expression/usage parse error, 3 basis or preset
mismatch, 4 failed internal cross-check, 1 any other engine error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
import warnings
from dataclasses import dataclass, field

from . import genus12, numerics, picard
from .bn import bn_context, evaluate_taut, _has_kernel_class
from .errors import (
    BasisMismatchError,
    EngineError,
    ExprSyntaxError,
    InternalCheckError,
    PresetMismatchError,
)
from .exprparse import expr_to_class, expr_to_ring, parse_expression
from .numerics import (
    boundary_degrees,
    mukai_profile,
    rho,
    scorza_genus,
    theta_counts,
    theta_pencil_profile,
)
from .picard import (
    MODULI,
    SPIN,
    canonical_class,
    moduli_basis,
    pair,
    pullback,
    pushforward,
    slope,
    solve_zg,
    spin_basis,
    test_curve,
    zg_class,
)
from .ring import (
    JACOBIAN,
    SURFACE,
    UNIVERSAL_CURVE,
    integrate,
    preset_jacobian_product,
    preset_surface_product,
    preset_universal_curve,
    pushforward_relative,
)
from .scalars import format_scalar


class UsageError(EngineError):
    pass


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):  # noqa: A003 - argparse API
        raise UsageError(message)


@dataclass
class Report:
    command: str
    inputs: dict
    result: object
    assumptions: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    elapsed_ms: int = 0

    def to_json(self) -> str:
        payload = {
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "assumptions": self.assumptions,
            "warnings": self.warnings,
        }
        return json.dumps(payload, indent=2)

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        if self.inputs:
            lines.append("inputs:")
            lines.extend(_text_block(self.inputs, indent=2))
        lines.append("result:")
        lines.extend(_text_block(self.result, indent=2))
        for label, items in (("assumptions", self.assumptions), ("warnings", self.warnings)):
            if items:
                lines.append(f"{label}:")
                lines.extend(f"  - {item}" for item in items)
        lines.append(f"elapsed: {self.elapsed_ms} ms")
        return "\n".join(lines)


def _text_block(value, indent: int) -> list[str]:
    pad = " " * indent
    if isinstance(value, dict):
        lines = []
        for key, sub in value.items():
            if isinstance(sub, (dict, list)):
                lines.append(f"{pad}{key}:")
                lines.extend(_text_block(sub, indent + 2))
            else:
                lines.append(f"{pad}{key}: {sub}")
        return lines
    if isinstance(value, list):
        return [f"{pad}- {item}" for item in value]
    return [f"{pad}{value}"]


@dataclass(frozen=True)
class CommandOutcome:
    exit_code: int
    stdout: str
    stderr: str
    report: Report | None


# ---------------------------------------------------------------------------
# Argument plumbing
# ---------------------------------------------------------------------------

def build_parser() -> _ArgumentParser:
    parser = _ArgumentParser(prog="oddspin", description=__doc__)
    common = _ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="text")
    sub = parser.add_subparsers(dest="command", required=True)

    ring = sub.add_parser("ring", parents=[common])
    ring_sub = ring.add_subparsers(dest="ring_command", required=True)
    ring_eval = ring_sub.add_parser("eval", parents=[common])
    ring_eval.add_argument("--preset", required=True,
                           help="jac:g=<g>,d=<d>,r=<r> | surface:g=<g> | uc:g=<g>")
    ring_eval.add_argument("expression")

    pic = sub.add_parser("pic", parents=[common])
    pic_sub = pic.add_subparsers(dest="pic_command", required=True)

    pic_class = pic_sub.add_parser("class", parents=[common])
    pic_class.add_argument("--g", type=int, required=True)
    pic_class.add_argument("--name", required=True, choices=("zg", "k", "bn", "d12"))
    pic_class.add_argument("--space", choices=(SPIN, MODULI), default=None)

    pic_pair = pic_sub.add_parser("pair", parents=[common])
    pic_pair.add_argument("--g", type=int, required=True)
    pic_pair.add_argument("--curve", required=True,
                          help="F:<i> | G:<i> | H0 | F0 | G0 | C0 | C1 | R | P")
    pic_pair.add_argument("--class", dest="class_spec", required=True,
                          help="zg | k | bn | d12 | expression in the basis")

    for direction in ("push", "pull"):
        cmd = pic_sub.add_parser(direction, parents=[common])
        cmd.add_argument("--g", type=int, required=True)
        cmd.add_argument("expression", nargs="?", default=None)
        cmd.add_argument("--class", dest="class_spec", default=None,
                         help="zg | k | bn | d12 (alternative to an expression)")

    pic_solve = pic_sub.add_parser("solve-zg", parents=[common])
    pic_solve.add_argument("--g", type=int, required=True)

    cert = sub.add_parser("cert", parents=[common])
    cert.add_argument("--g", type=int, required=True)
    cert.add_argument("--aux", required=True, choices=("bn", "d12"))

    d12 = sub.add_parser("d12", parents=[common])
    d12_sub = d12.add_subparsers(dest="d12_command", required=True)
    d12_run = d12_sub.add_parser("run", parents=[common])
    d12_run.add_argument("--dump-intermediates", action="store_true")

    numbers = sub.add_parser("numbers", parents=[common])
    numbers.add_argument("--g", type=int, required=True)
    return parser


def _parse_preset_spec(spec: str):
    kind, _, args = spec.partition(":")
    params = {}
    if args:
        for piece in args.split(","):
            key, _, value = piece.partition("=")
            if not value or not key:
                raise UsageError(f"malformed preset parameter {piece!r}")
            try:
                params[key] = int(value)
            except ValueError:
                raise UsageError(f"preset parameter {piece!r} is not an integer")
    try:
        if kind == "jac":
            return preset_jacobian_product(params["g"], params["d"], params["r"])
        if kind == "surface":
            return preset_surface_product(params["g"])
        if kind == "uc":
            return preset_universal_curve(params["g"])
    except KeyError as missing:
        raise UsageError(f"preset {spec!r} is missing parameter {missing}")
    raise UsageError(f"unknown preset kind {kind!r}; expected jac, surface or uc")


def _named_class(name: str, g: int, space: str | None):
    if name == "zg":
        return zg_class(g)
    if name == "k":
        return canonical_class(space or SPIN, g)
    if name == "bn":
        return picard.bn_divisor_class(g)
    if name == "d12":
        if g != 12:
            raise UsageError("the d12 class lives on genus 12")
        return genus12.d12_class()
    raise UsageError(f"unknown class name {name!r}")


def _resolve_curve(spec: str, g: int):
    name, _, index = spec.partition(":")
    if name == "P":
        return theta_pencil_profile(g).curve
    if index:
        try:
            i = int(index)
        except ValueError:
            raise UsageError(f"curve index {index!r} is not an integer")
        return test_curve(name, g, i)
    return test_curve(name, g)


# ---------------------------------------------------------------------------
# Subcommand handlers (each returns (inputs, result, assumptions))
# ---------------------------------------------------------------------------

def _run_ring_eval(args):
    preset = _parse_preset_spec(args.preset)
    expr = parse_expression(args.expression, preset)
    elem = expr_to_ring(expr, preset)
    result = {
        "preset": preset.label,
        "normalized": elem.render(),
        "degree": elem.degree() if elem.is_homogeneous() else None,
        "value": None,
        "value_method": None,
    }
    assumptions: list[str] = []
    if elem.is_zero() or not elem.is_homogeneous():
        return {"preset": args.preset, "expression": args.expression}, result, assumptions
    degree = elem.degree()
    if preset.kind == JACOBIAN:
        g, d, r = preset.param("g"), preset.param("d"), preset.param("r")
        pure = not any(any(m[3:]) for m, _ in elem.terms)
        if _has_kernel_class(elem):
            assumptions.append(
                "kernel class present: no side-specific substitution applied"
            )
        elif degree == rho(g, r, d) + 1:
            ctx = bn_context(g, r, d)
            result["value"] = format_scalar(evaluate_taut(ctx, elem))
            result["value_method"] = "tautological-evaluation"
        elif pure and degree == g + 1:
            result["value"] = format_scalar(integrate(elem))
            result["value_method"] = "integrate"
    elif preset.kind == SURFACE and degree == 2:
        result["value"] = format_scalar(integrate(elem))
        result["value_method"] = "integrate"
    elif preset.kind == UNIVERSAL_CURVE and degree == 2:
        coeff = pushforward_relative(elem, preset.param("g"))
        result["value"] = format_scalar(coeff)
        result["value_method"] = "relative-pushforward (lambda coefficient)"
    return {"preset": args.preset, "expression": args.expression}, result, assumptions


def _run_pic_class(args):
    cls = _named_class(args.name, args.g, args.space)
    result = {
        "basis": cls.basis.label,
        "class": cls.render(),
        "coefficients": cls.coefficients_by_name(),
    }
    assumptions: list[str] = []
    if args.name == "bn":
        result["slope"] = format_scalar(slope(cls))
        result["divisor_exists"] = picard.bn_divisor_exists(args.g)
        if not picard.bn_divisor_exists(args.g):
            assumptions.append(
                "g+1 is prime: the class formula has no effective representative"
            )
    if args.name == "d12":
        info = genus12.d12_class_info()
        assumptions.extend(info.assumptions)
        result["slope"] = format_scalar(slope(cls))
    inputs = {"g": args.g, "name": args.name}
    if args.space:
        inputs["space"] = args.space
    return inputs, result, assumptions


def _run_pic_pair(args):
    curve = _resolve_curve(args.curve, args.g)
    if args.class_spec in ("zg", "k", "bn", "d12"):
        space = curve.basis.space if args.class_spec == "k" else None
        cls = _named_class(args.class_spec, args.g, space)
    else:
        expr = parse_expression(args.class_spec, curve.basis)
        cls = expr_to_class(expr, curve.basis)
    value = pair(curve, cls)
    result = {
        "curve": curve.name,
        "basis": curve.basis.label,
        "class": cls.render(),
        "value": format_scalar(value),
    }
    assumptions = list(curve.assumed_zero_labels())
    inputs = {"g": args.g, "curve": args.curve, "class": args.class_spec}
    return inputs, result, assumptions


def _run_pic_push_pull(args, direction: str):
    if (args.expression is None) == (args.class_spec is None):
        raise UsageError("pass exactly one of an expression or --class")
    source_basis = spin_basis(args.g) if direction == "push" else moduli_basis(args.g)
    if args.class_spec is not None:
        space = source_basis.space if args.class_spec == "k" else None
        cls = _named_class(args.class_spec, args.g, space)
        if cls.basis != source_basis:
            raise BasisMismatchError(
                f"class {args.class_spec!r} lives on {cls.basis.label}, but"
                f" {direction} starts from {source_basis.label}"
            )
    else:
        expr = parse_expression(args.expression, source_basis)
        cls = expr_to_class(expr, source_basis)
    out = pushforward(args.g, cls) if direction == "push" else pullback(args.g, cls)
    result = {
        "from": cls.basis.label,
        "to": out.basis.label,
        "class": out.render(),
        "coefficients": out.coefficients_by_name(),
    }
    inputs = {"g": args.g,
              "class": args.class_spec if args.class_spec else args.expression}
    return inputs, result, []


def _run_pic_solve_zg(args):
    report = solve_zg(args.g)
    result = {
        "class": report.divisor_class.render(),
        "coefficients": report.divisor_class.coefficients_by_name(),
        "matches_closed_form": report.matches_closed_form,
        "full_rank": report.full_rank,
        "degenerate": report.degenerate,
        "undetermined": list(report.undetermined),
        "fallback_consistent": report.fallback_consistent,
        "rows": list(report.row_labels),
    }
    return {"g": args.g}, result, list(report.assumptions)


def _run_cert(args):
    report = picard.certificate(args.g, args.aux)
    return {"g": args.g, "aux": args.aux}, report.to_json_dict(), list(report.assumptions)


def _run_d12(args):
    report = genus12.d12_slope_report()
    result = {
        "a": format_scalar(report.a),
        "b0": format_scalar(report.b0),
        "b1": format_scalar(report.b1),
        "slope": format_scalar(report.slope),
        "threshold": format_scalar(report.threshold),
        "violates_slope_conjecture": report.violates_slope_conjecture,
        "cross_multiplication": {
            "slope_times_13": str(report.cross_lhs),
            "threshold_times_642": str(report.cross_rhs),
        },
        "class": "13245*lambda - 1926*delta0 - 9867*delta1 - sum_{j>=2} b_j*delta_j",
    }
    info = genus12.d12_class_info()
    assumptions = [report.higher_boundary_note]
    assumptions.extend(info.assumed_zero_pairings)
    if args.dump_intermediates:
        result["intermediates"] = genus12.intermediates()
    return {"dump_intermediates": args.dump_intermediates}, result, assumptions


def _run_numbers(args):
    g = args.g
    counts = theta_counts(g)
    degrees = {
        str(i): {"A": boundary_degrees(g, i)[0], "B": boundary_degrees(g, i)[1]}
        for i in range(g // 2 + 1)
    }
    profile = theta_pencil_profile(g)
    result = {
        "g": g,
        "spin_counts": {"even": counts.n_even, "odd": counts.n_odd,
                        "total": counts.total},
        "covering_degree": picard.covering_degree(g),
        "boundary_degrees": degrees,
        "scorza_genus": scorza_genus(g),
        "theta_pencil": {
            "pairings": {
                name: format_scalar(v)
                for name, v in zip(profile.curve.basis.names, profile.curve.pairings)
                if v != 0
            },
            "canonical_pairing": format_scalar(profile.canonical_pairing),
            "canonical_negative": profile.canonical_pairing < 0,
            "discriminant_degree": profile.discriminant_degree,
            "decomposition_ok": profile.decomposition_ok,
        },
        "brill_noether_divisor_exists": picard.bn_divisor_exists(g),
        "mukai": None,
    }
    if 7 <= g <= 10:
        mk = mukai_profile(g)
        result["mukai"] = {"dim_v": mk.dim_v, "n_g": mk.n_g,
                           "max_delta_dominant": mk.max_delta_dominant}
    assumptions = list(profile.curve.assumed_zero_labels())
    return {"g": g}, result, assumptions


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

def _dispatch(args) -> tuple[str, dict, object, list]:
    if args.command == "ring":
        inputs, result, notes = _run_ring_eval(args)
        return "ring eval", inputs, result, notes
    if args.command == "pic":
        handler = {
            "class": lambda: _run_pic_class(args),
            "pair": lambda: _run_pic_pair(args),
            "push": lambda: _run_pic_push_pull(args, "push"),
            "pull": lambda: _run_pic_push_pull(args, "pull"),
            "solve-zg": lambda: _run_pic_solve_zg(args),
        }[args.pic_command]
        inputs, result, notes = handler()
        return f"pic {args.pic_command}", inputs, result, notes
    if args.command == "cert":
        inputs, result, notes = _run_cert(args)
        return "cert", inputs, result, notes
    if args.command == "d12":
        inputs, result, notes = _run_d12(args)
        return "d12 run", inputs, result, notes
    if args.command == "numbers":
        inputs, result, notes = _run_numbers(args)
        return "numbers", inputs, result, notes
    raise UsageError(f"unknown command {args.command!r}")


def run_command(argv) -> CommandOutcome:
    """Execute one command line; never raises for engine errors."""
    started = time.monotonic()
    try:
        args = build_parser().parse_args(list(argv))
    except UsageError as err:
        return CommandOutcome(2, "", f"error: {err}", None)

    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            command, inputs, result, notes = _dispatch(args)
        report = Report(
            command=command,
            inputs=inputs,
            result=result,
            assumptions=notes,
            warnings=[str(w.message) for w in caught],
            elapsed_ms=int((time.monotonic() - started) * 1000),
        )
        text = report.to_json() if args.format == "json" else report.to_text()
        return CommandOutcome(0, text, "", report)
    except (UsageError, ExprSyntaxError) as err:
        return CommandOutcome(2, "", f"error: {err}", None)
    except (PresetMismatchError, BasisMismatchError) as err:
        return CommandOutcome(3, "", f"error: {err}", None)
    except InternalCheckError as err:
        return CommandOutcome(4, "", f"internal check failed: {err}", None)
    except EngineError as err:
        return CommandOutcome(1, "", f"error: {err}", None)


def main() -> None:
    outcome = run_command(sys.argv[1:])
    if outcome.stdout:
        print(outcome.stdout)
    if outcome.stderr:
        print(outcome.stderr, file=sys.stderr)
    sys.exit(outcome.exit_code)


if __name__ == "__main__":
    main()
