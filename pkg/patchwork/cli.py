from __future__ import annotations

import argparse
import logging
import os
import sys
from typing import Any, Optional, Sequence

from subtypes import Enum

from .charts import adjoin_side, affine_topology, chart_of_polynomial, projective_topology
from .convexity import Infeasible
from .errors import InvalidInputError, PatchworkError
from .lattice import LatticePoint
from .polyval import SparsePolynomial
from .presets import describe, load_preset, save_preset
from .serialization import PatchworkProblem, build_report, convexify_report, dumps, halving_schedule, verify_problem, write_json

logger = logging.getLogger(__name__)

LOG_VARIABLE = "PATCHWORK_LOG"
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


class Enums:
    class ExitCode(Enum):
        OK, INVALID, INFEASIBLE, UNSTABLE = 0, 1, 2, 3


def configure_logging(level: Optional[str] = None) -> None:
    """Attach one stderr handler to the package logger at the level named by PATCHWORK_LOG, or WARNING."""
    package = logging.getLogger("patchwork")
    name = (level if level is not None else os.environ.get(LOG_VARIABLE) or "WARNING").strip()
    resolved = int(name) if name.isdigit() else logging.getLevelName(name.upper())
    package.setLevel(resolved if isinstance(resolved, int) else logging.WARNING)

    if not any(getattr(handler, "_patchwork", False) for handler in package.handlers):
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handler._patchwork = True
        package.addHandler(handler)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="patchwork", description="Construct real algebraic curves by combinatorial patchworking.")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    build = commands.add_parser("build", help="patchwork a problem file into a curve and report its isotopy code")
    build.add_argument("file", help="problem file, or '-' for standard input")
    build.add_argument("--svg", metavar="PATH", help="also draw the four copies and the projective plane")
    build.add_argument("--json", metavar="PATH", help="also write the report to a file")
    build.set_defaults(handler=run_build)

    convexify = commands.add_parser("convexify", help="check the heights of a problem or find integer heights that convexify it")
    convexify.add_argument("file", help="problem file, or '-' for standard input")
    convexify.add_argument("--heights", metavar="PATH", help="write the problem with the heights found to a file")
    convexify.set_defaults(handler=run_convexify)

    verify = commands.add_parser("verify", help="compare the combinatorial curve with the real curve of the patchworked polynomial")
    verify.add_argument("file", help="problem file, or '-' for standard input")
    verify.add_argument("--t-start", default="1/2", metavar="R", help="first value of t, an integer or 'p/q' below 1 (default 1/2)")
    verify.add_argument("--t-steps", type=int, default=12, metavar="N", help="number of halvings of t to try (default 12)")
    verify.add_argument("--grid", type=int, default=512, metavar="N", help="sign grid resolution per quadrant (default 512)")
    verify.add_argument("--json", metavar="PATH", help="also write the report to a file")
    verify.set_defaults(handler=run_verify)

    chart = commands.add_parser("chart", help="the chart of a trinomial or quasi-homogeneous polynomial and its gluings")
    chart.add_argument("expression", help="polynomial in x and y, for example '8x^3 - x^2 + 4y^2'")
    chart.add_argument("--adjoin", action="append", default=[], metavar="a,b", help="insert a side with this outward normal (repeatable)")
    view = chart.add_mutually_exclusive_group()
    view.add_argument("--affine", action="store_true", help="glue the chart into the affine plane")
    view.add_argument("--projective", action="store_true", help="glue the chart into the projective plane")
    chart.add_argument("--svg", metavar="PATH", help="also draw the chart or its gluing")
    chart.set_defaults(handler=run_chart)

    preset = commands.add_parser("preset", help="print a built-in or saved problem")
    preset.add_argument("name", nargs="?", help="preset name")
    preset.add_argument("--degree", type=int, metavar="M", help="degree, for presets that take one")
    preset.add_argument("--save", metavar="FILE", help="store the problem read from FILE under the given name instead of printing")
    preset.add_argument("--list", action="store_true", help="list the available presets")
    preset.set_defaults(handler=run_preset)

    serve = commands.add_parser("serve", help="run the HTTP API and the designer")
    serve.add_argument("--port", type=int, default=8000, metavar="N")
    serve.add_argument("--host", default="127.0.0.1")
    serve.set_defaults(handler=run_serve)

    return parser


def run_build(args: argparse.Namespace) -> int:
    problem = PatchworkProblem.load(args.file)
    report = build_report(problem)
    if args.json:
        write_json(report, args.json)
    if args.svg:
        from .svg import render_triangulation
        render_triangulation(problem.triangulation()).write(args.svg)

    _emit(report)
    return Enums.ExitCode.OK.value


def run_convexify(args: argparse.Namespace) -> int:
    problem = PatchworkProblem.load(args.file)
    result = convexify_report(problem)
    if isinstance(result, Infeasible):
        _emit(result.to_json())
        _complain(f"no convex lift: {result.reason}")
        return Enums.ExitCode.INFEASIBLE.value

    for violation in result["violations"]:
        _complain(f"given heights rejected: {violation}")
    if args.heights:
        problem.with_heights(result["heights"]).save(args.heights)

    _emit(result)
    return Enums.ExitCode.OK.value


def run_verify(args: argparse.Namespace) -> int:
    if args.grid < 8:
        raise InvalidInputError(f"the grid needs at least 8 nodes, not {args.grid}")

    problem = PatchworkProblem.load(args.file)
    report = verify_problem(problem, schedule=halving_schedule(args.t_start, args.t_steps), resolution=args.grid)
    payload = report.to_json()
    if args.json:
        write_json(payload, args.json)

    _emit(payload)
    if not report.stabilized:
        _complain(f"no stabilization: last code {report.code.encoding}, expected {report.expected.encoding}")
        return Enums.ExitCode.UNSTABLE.value
    return Enums.ExitCode.OK.value


def run_chart(args: argparse.Namespace) -> int:
    chart = chart_of_polynomial(SparsePolynomial.parse(args.expression))
    for normal in args.adjoin:
        chart = adjoin_side(chart, _normal(normal))

    if args.affine or args.projective:
        glued = affine_topology(chart) if args.affine else projective_topology(chart)
        payload, drawing = glued.to_json(), glued
    else:
        payload, drawing = chart.to_json(), chart

    if args.svg:
        from .svg import render_chart, render_glued
        (render_chart(drawing) if drawing is chart else render_glued(drawing)).write(args.svg)

    _emit(payload)
    return Enums.ExitCode.OK.value


def run_preset(args: argparse.Namespace) -> int:
    if args.list:
        _emit(describe())
        return Enums.ExitCode.OK.value

    if not args.name:
        raise InvalidInputError("name a preset, or pass --list")

    if args.save:
        save_preset(args.name, PatchworkProblem.load(args.save))
        return Enums.ExitCode.OK.value

    _emit(load_preset(args.name, degree=args.degree).to_json())
    return Enums.ExitCode.OK.value


def run_serve(args: argparse.Namespace) -> int:
    from .server import serve
    serve(port=args.port, host=args.host)
    return Enums.ExitCode.OK.value


def main(argv: Sequence[str] = None) -> int:
    configure_logging()
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except PatchworkError as ex:
        _complain(ex.message)
        for violation in ex.violations:
            _complain(f"  {violation}")
        return Enums.ExitCode.INVALID.value


def _emit(payload: Any) -> None:
    sys.stdout.write(dumps(payload))


def _complain(message: str) -> None:
    sys.stderr.write(f"patchwork: {message}\n")


def _normal(text: str) -> LatticePoint:
    try:
        i, j = (int(part) for part in text.split(","))
    except ValueError as ex:
        raise InvalidInputError(f"a normal is written 'a,b' with integers a and b, not {text!r}") from ex
    return LatticePoint(i, j)


if __name__ == "__main__":
    sys.exit(main())
