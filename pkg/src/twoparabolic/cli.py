"""Command line interface: ``twoparabolic {check,sweep,diam,project,verify}``.

Exit codes are uniform: 0 for a positive result, 1 for a negative result,
2 for usage or input errors. Floats in CSV and JSON output carry 17
significant digits.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

import numpy as np

from . import pingpong
from .criteria import (
    CRITERIA,
    GeneratorParams,
    build_generators,
    evaluate_criteria,
    normalize_delta_theta,
)
from .fans import Cardioid
from .heisenberg import HeisPoint, Infinity
from .pingpong import VerifyReport
from .projlinalg import u21_inverse
from .rcircle import diameter, farthest_point
from .spheres import isometric_sphere

PARAM_NAMES = ("s1", "t1", "theta1", "s2", "t2", "theta2")
SWEEP_HEADER = ["axis1", "axis2", *CRITERIA, "any"]

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def fmt(x: float) -> str:
    return format(float(x), ".17g")


def _json_value(obj) -> str:
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (float, np.floating)):
        return fmt(obj) if math.isfinite(obj) else "null"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(str(k))}: {_json_value(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    """Single-line JSON with 17 significant digits for floats."""
    return _json_value(obj)


# -- parameters ------------------------------------------------------------------

PARAM_HELP = {
    "s": "horizontal length of translation %s (default 0)",
    "t": "vertical part of translation %s (default 0)",
    "theta": "horizontal direction of translation %s (default 0)",
}


def _add_param_flags(p: argparse.ArgumentParser) -> None:
    for name in PARAM_NAMES:
        p.add_argument(f"--{name}", type=float, default=0.0, help=PARAM_HELP[name[:-1]] % name[-1])
    p.add_argument("--degrees", action="store_true", help="angles are given in degrees")


def _raw_params(args) -> dict[str, float]:
    vals = {name: getattr(args, name) for name in PARAM_NAMES}
    if args.degrees:
        vals["theta1"] = math.radians(vals["theta1"])
        vals["theta2"] = math.radians(vals["theta2"])
    return vals


def make_params(vals: dict[str, float]) -> tuple[GeneratorParams, str | None]:
    """Validated, normalized parameters and the generator inverted (if any)."""
    try:
        params = GeneratorParams(**vals)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return normalize_delta_theta(params)


def _params_dict(p: GeneratorParams) -> dict[str, float]:
    return dict(zip(PARAM_NAMES, p.as_tuple()))


# -- check -----------------------------------------------------------------------

def check_report(params: GeneratorParams, inverted: str | None) -> dict:
    verdict = evaluate_criteria(params)
    return {
        "params": _params_dict(params),
        "inverted": inverted,
        "criteria": {
            r.id: {"applicable": r.applicable, "status": r.code, "lhs": r.lhs,
                   "rhs": r.rhs, "margin": r.margin}
            for r in verdict.results
        },
        "any": verdict.any_satisfied,
        "equality_class": verdict.equality_class.value,
    }


def cmd_check(args, out) -> int:
    params, inverted = make_params(_raw_params(args))
    report = check_report(params, inverted)
    if args.json:
        print(dumps(report), file=out)
    else:
        p = report["params"]
        print("params " + " ".join(f"{k}={fmt(v)}" for k, v in p.items()), file=out)
        if inverted:
            print(f"replaced {inverted} by its inverse to bring theta1 - theta2 into [-pi/2, pi/2]",
                  file=out)
        for cid, r in report["criteria"].items():
            if r["applicable"]:
                print(f"{cid:<5} {r['status']:<2} margin={fmt(r['margin'])} "
                      f"lhs={fmt(r['lhs'])} rhs={fmt(r['rhs'])}", file=out)
            else:
                print(f"{cid:<5} NA", file=out)
        print(f"any   {'yes' if report['any'] else 'no'}", file=out)
        print(f"equality class: {report['equality_class']}", file=out)
    return EXIT_OK if report["any"] else EXIT_NEGATIVE


# -- sweep -----------------------------------------------------------------------

@dataclass(frozen=True)
class SweepAxis:
    name: str
    lo: float
    hi: float
    steps: int

    def __post_init__(self):
        if self.name not in PARAM_NAMES:
            raise UsageError(f"unknown sweep parameter {self.name!r}")
        if self.steps < 1:
            raise UsageError("steps must be at least 1")
        if self.lo > self.hi:
            raise UsageError("sweep needs min <= max")

    def values(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.steps) if self.steps > 1 else np.array([self.lo])


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[SweepAxis, ...]
    fixed: dict

    def __post_init__(self):
        if not 1 <= len(self.axes) <= 2:
            raise UsageError("a sweep takes one or two axes")
        if len(self.axes) == 2 and self.axes[0].name == self.axes[1].name:
            raise UsageError("sweep axes must differ")


def sweep_cell(vals: dict[str, float]) -> list[str]:
    """Status codes ``C1..Vert, any`` for one parameter point."""
    try:
        params, _ = make_params(vals)
    except UsageError:
        return ["NA"] * (len(CRITERIA) + 1)
    verdict = evaluate_criteria(params)
    return [verdict[c].code for c in CRITERIA] + [verdict.summary_code]


def sweep_rows(spec: SweepSpec):
    grids = [ax.values() for ax in spec.axes]
    if len(grids) == 1:
        grids.append(np.array([math.nan]))
    for x in grids[0]:
        for y in grids[1]:
            vals = dict(spec.fixed)
            vals[spec.axes[0].name] = float(x)
            if len(spec.axes) == 2:
                vals[spec.axes[1].name] = float(y)
            yield [fmt(x), "" if math.isnan(y) else fmt(y), *sweep_cell(vals)]


def cmd_sweep(args, out) -> int:
    if not args.axis:
        raise UsageError("give at least one --axis NAME MIN MAX STEPS")
    axes = []
    for name, lo, hi, steps in args.axis:
        try:
            lo, hi, steps = float(lo), float(hi), int(steps)
        except ValueError as exc:
            raise UsageError(f"bad --axis values: {exc}") from exc
        if args.degrees and name.startswith("theta"):
            lo, hi = math.radians(lo), math.radians(hi)
        axes.append(SweepAxis(name, lo, hi, steps))
    spec = SweepSpec(tuple(axes), _raw_params(args))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(SWEEP_HEADER)
    for row in sweep_rows(spec):
        writer.writerow(row)
    _emit(buf.getvalue(), args.out, out)
    return EXIT_OK


def _emit(text: str, path: str | None, out) -> None:
    if path and path != "-":
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        out.write(text)


# -- diam ------------------------------------------------------------------------

def cmd_diam(args, out) -> int:
    alpha = math.radians(args.alpha) if args.degrees else args.alpha
    if not args.r > 0:
        raise UsageError("r must be positive")
    if not 0.0 <= alpha <= math.pi / 2:
        raise UsageError("alpha must lie in [0, pi/2]")
    if args.oracle_n < 100:
        raise UsageError("oracle-n must be at least 100")
    closed = diameter(args.r, alpha)
    fp = farthest_point(args.r, alpha, args.oracle_n)
    diff = abs(closed - fp.distance)
    ok = diff <= 1e-6 * args.r
    if args.json:
        print(dumps({"r": args.r, "alpha": alpha, "closed_form": closed, "oracle": fp.distance,
                     "oracle_theta": fp.theta, "oracle_eta": fp.eta, "abs_diff": diff, "pass": ok}),
              file=out)
    else:
        print(f"closed form {fmt(closed)}", file=out)
        print(f"oracle      {fmt(fp.distance)} (theta={fmt(fp.theta)}, eta={fp.eta:+d})", file=out)
        print(f"abs diff    {fmt(diff)}", file=out)
    return EXIT_OK if ok else EXIT_NEGATIVE


# -- project ---------------------------------------------------------------------

@dataclass(frozen=True)
class Polyline:
    name: str
    kind: str  # strip-line, projected-circle or cardioid
    points: np.ndarray  # complex

    def __post_init__(self):
        if not np.all(np.isfinite(self.points)):
            raise ValueError(f"polyline {self.name} has non-finite points")


def _line(phi: float, c: float, half_length: float, n: int) -> np.ndarray:
    u = np.linspace(-half_length, half_length, n)
    return (c + 1j * u) * np.exp(1j * phi)


def figure1(params: GeneratorParams, n: int) -> list[Polyline]:
    """Projected isometric spheres of ``B^{+-1}`` and the strip of width ``s1`` holding them."""
    _, B = build_generators(params)
    spheres = {"I_B": isometric_sphere(B), "I_Binv": isometric_sphere(u21_inverse(B))}
    phi = params.theta1
    lo, hi = pingpong._projection_range(list(spheres.values()), phi)
    mid = 0.5 * (lo + hi)
    half = max(abs(s.center.zeta) + s.radius for s in spheres.values()) * 1.5
    t = np.linspace(0.0, 2 * math.pi, n)
    curves = [
        Polyline("strip_lo", "strip-line", _line(phi, mid - params.s1 / 2, half, n)),
        Polyline("strip_hi", "strip-line", _line(phi, mid + params.s1 / 2, half, n)),
    ]
    for name, S in spheres.items():
        curves.append(Polyline(name, "projected-circle", S.center.zeta + S.radius * np.exp(1j * t)))
    return curves


def figure2(params: GeneratorParams, n: int) -> list[Polyline]:
    """Cardioids of the finite fans ``k = +-s2/2`` and the strip ``|coordinate| <= s1/2``."""
    if not (params.s1 > 0 and params.s2 > 0):
        raise UsageError("fig2 needs s1 > 0 and s2 > 0")
    k = params.s2 / 2
    half = max(2 / k, params.s1) * 1.5
    return [
        Polyline("cardioid_plus", "cardioid", Cardioid(k, 1).polyline(n, params.theta2)),
        Polyline("cardioid_minus", "cardioid", Cardioid(k, -1).polyline(n, params.theta2)),
        Polyline("strip_lo", "strip-line", _line(params.theta1, -params.s1 / 2, half, n)),
        Polyline("strip_hi", "strip-line", _line(params.theta1, params.s1 / 2, half, n)),
    ]


def polylines_csv(curves: list[Polyline]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["curve", "idx", "x", "y"])
    for c in curves:
        for i, z in enumerate(c.points):
            writer.writerow([c.name, i, fmt(z.real), fmt(z.imag)])
    return buf.getvalue()


def cmd_project(args, out) -> int:
    if args.samples < 2:
        raise UsageError("samples must be at least 2")
    params, _ = make_params(_raw_params(args))
    curves = figure1(params, args.samples) if args.figure == "fig1" else figure2(params, args.samples)
    _emit(polylines_csv(curves), args.out, out)
    return EXIT_OK


# -- verify ----------------------------------------------------------------------

def _point_json(p):
    if p is None:
        return None
    if isinstance(p, Infinity):
        return "inf"
    return {"x": p.zeta.real, "y": p.zeta.imag, "v": p.v}


def _point_text(p) -> str:
    if isinstance(p, Infinity):
        return "infinity"
    return f"(x={fmt(p.zeta.real)}, y={fmt(p.zeta.imag)}, v={fmt(p.v)})"


def run_verify(params: GeneratorParams, mode: str, n: int, seed: int, max_len: int,
               construction: str = "auto", basepoint=None) -> VerifyReport:
    A, B = build_generators(params)
    if mode == "klein":
        name = pingpong.auto_construction(params) if construction == "auto" else construction
        try:
            D_A, D_B = pingpong.CONSTRUCTIONS[name](params)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        report = pingpong.verify_klein(D_A, D_B, A, B, n=n, seed=seed)
        report.info["construction"] = name
        return report
    spheres = pingpong.four_spheres(params)
    if mode == "four-sphere":
        return pingpong.verify_four_spheres(spheres.a_plus, spheres.a_minus, spheres.b_plus,
                                            spheres.b_minus, A, B, n=n, seed=seed)
    return pingpong.word_nesting_test(params, spheres, max_len, basepoint=basepoint, seed=seed)


def cmd_verify(args, out) -> int:
    if args.n < 100:
        raise UsageError("n must be at least 100")
    if args.max_len < 1:
        raise UsageError("max-len must be at least 1")
    params, _ = make_params(_raw_params(args))
    basepoint = None
    if args.basepoint is not None:
        x, y, v = args.basepoint
        basepoint = HeisPoint(complex(x, y), v)
    try:
        report = run_verify(params, args.mode, args.n, args.seed, args.max_len,
                            args.construction, basepoint)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.json:
        print(dumps({
            "mode": args.mode,
            "pass": report.passed,
            "samples_used": report.samples_used,
            "seed": report.seed,
            "hypotheses": {
                k: {"pass": h.passed, "worst_margin": h.worst_margin,
                    "witness": _point_json(h.witness), "detail": h.detail}
                for k, h in report.hypothesis_results.items()
            },
        }), file=out)
    else:
        print(f"mode {args.mode}, {report.samples_used} samples, seed {report.seed}", file=out)
        if "construction" in report.info:
            print(f"construction {report.info['construction']}", file=out)
        for k, h in report.hypothesis_results.items():
            line = f"{'PASS' if h.passed else 'FAIL'} {k}: worst margin {fmt(h.worst_margin)}"
            if h.detail:
                line += f" [{h.detail}]"
            print(line, file=out)
            if not h.passed and h.witness is not None:
                print(f"     witness {_point_text(h.witness)}", file=out)
    return EXIT_OK if report.passed else EXIT_NEGATIVE


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="twoparabolic",
                                     description="Discreteness criteria for two Heisenberg translations.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="evaluate every criterion")
    _add_param_flags(p)
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("sweep", help="criterion status codes over a 1- or 2-axis grid (CSV)")
    _add_param_flags(p)
    p.add_argument("--axis", nargs=4, action="append", metavar=("NAME", "MIN", "MAX", "STEPS"),
                   help="sweep parameter NAME over STEPS values; give once or twice")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("diam", help="closed-form vs brute-force R-circle diameter")
    p.add_argument("--r", type=float, required=True, help="R-circle radius")
    p.add_argument("--alpha", type=float, required=True, help="angle in [0, pi/2]")
    p.add_argument("--oracle-n", type=int, default=10_000, help="brute-force grid size")
    p.add_argument("--degrees", action="store_true", help="alpha is given in degrees")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_diam)

    p = sub.add_parser("project", help="polylines of projected spheres, strips and cardioids (CSV)")
    p.add_argument("figure", choices=("fig1", "fig2"),
                   help="fig1: strip and projected spheres; fig2: cardioids and strip")
    _add_param_flags(p)
    p.add_argument("--samples", type=int, default=200, help="points per curve")
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", help="sampled ping-pong verification")
    _add_param_flags(p)
    p.add_argument("--mode", choices=("klein", "four-sphere", "words"), default="klein",
                   help="two-domain check, four-sphere check or reduced-word nesting")
    p.add_argument("--construction", choices=("auto", *pingpong.CONSTRUCTIONS), default="auto",
                   help="domain construction for klein mode (auto picks a satisfied one)")
    p.add_argument("--n", type=int, default=10_000, help="boundary samples")
    p.add_argument("--seed", type=int, default=0, help="sampling seed")
    p.add_argument("--max-len", type=int, default=4, help="longest word in words mode")
    p.add_argument("--basepoint", type=float, nargs=3, metavar=("X", "Y", "V"),
                   help="words-mode basepoint (default: searched)")
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args, out)
    except UsageError as exc:
        print(f"twoparabolic {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
