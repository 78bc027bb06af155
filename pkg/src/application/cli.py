"""
Command-line surface: classify, curve, arcs, mesh and verify.

Stdout carries the CSV/JSON result only; logs go to stderr.
"""

import argparse
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from pydantic import ValidationError as PydanticValidationError

from ..domain.configuration import Config, GridConfig
from ..domain.curves import HugoniotCurve
from ..domain.errors import ExitCode, exit_code_for
from ..domain.model import ChartPoint
from ..infrastructure.configuration_service import load_config
from ..infrastructure.export import write_text, writer_for
from ..infrastructure.logging import LoggingService, configure_logging
from .commands import (
    SURFACE_CHOICES,
    ArcsCommand,
    BaseCommand,
    ClassifyCommand,
    CommandOutput,
    CurveCommand,
    ListChecksCommand,
    MeshCommand,
    VerifyCommand,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wave-manifold",
        description="Wave-manifold decomposition for symmetric quadratic conservation laws",
    )
    parser.add_argument("--config", type=Path, help="JSON configuration file")
    parser.add_argument("--b1", type=float, help="flux parameter b1 (> 1)")
    parser.add_argument("--c", type=float, help="flux parameter c = a3 - a2 (> 0)")
    parser.add_argument("--format", choices=("csv", "json"), help="output format")
    parser.add_argument(
        "--log-level",
        choices=("TRACE", "DEBUG", "INFO", "WARNING", "ERROR"),
        type=str.upper,
        help="log level on stderr",
    )
    parser.add_argument("--seed", type=int, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    # the instance flags are also accepted after the subcommand name
    instance = argparse.ArgumentParser(add_help=False)
    instance.add_argument("--b1", dest="sub_b1", type=float, help="flux parameter b1 (> 1)")
    instance.add_argument("--c", dest="sub_c", type=float, help="flux parameter c = a3 - a2 (> 0)")

    classify = sub.add_parser("classify", parents=[instance], help="region label of a point")
    classify.add_argument("--z", type=float, required=True)
    classify.add_argument("--t", type=float, required=True)
    classify.add_argument("--Y", type=float, required=True)

    curve = sub.add_parser("curve", parents=[instance], help="sample a Hugoniot curve")
    curve.add_argument("--k", type=float, required=True)
    curve.add_argument("--l", type=float, required=True)
    curve.add_argument("--prime", action="store_true", help="the Y-reflected curve")
    curve.add_argument("--z-min", type=float, default=-3.0)
    curve.add_argument("--z-max", type=float, default=3.0)
    curve.add_argument("--n", type=int, default=101, help="number of samples (>= 2)")

    arcs = sub.add_parser("arcs", parents=[instance], help="admissible arcs of a Hugoniot curve")
    arcs.add_argument("--k", type=float)
    arcs.add_argument("--l", type=float)
    arcs.add_argument("--z", type=float)
    arcs.add_argument("--t", type=float)
    arcs.add_argument("--Y", type=float)
    arcs.add_argument("--samples", type=int, default=0, help="polyline samples per arc")

    mesh = sub.add_parser("mesh", parents=[instance], help="sample surfaces over the (z, t) grid")
    mesh.add_argument("--surface", choices=SURFACE_CHOICES, required=True)
    mesh.add_argument("--out", type=Path, help="output file (default: stdout)")
    mesh.add_argument("--resolution", type=int, help="grid points per axis")
    for axis in ("z", "t", "Y"):
        mesh.add_argument(
            f"--{axis}-bounds",
            dest=f"{axis.lower()}_bounds",
            type=float,
            nargs=2,
            metavar=("LOW", "HIGH"),
            help=f"{axis} range of the sampling box",
        )

    verify = sub.add_parser("verify", parents=[instance], help="run the verification suite")
    verify.add_argument("--all", action="store_true", help="run every check (default)")
    verify.add_argument("--check", action="append", default=[], help="run one check; repeatable")
    verify.add_argument("--list", action="store_true", help="list checks and exit")
    verify.add_argument("--samples", type=int, default=200, help="random samples per check")
    return parser


def _overrides(args: argparse.Namespace, config: Config) -> Dict[str, Any]:
    b1 = args.sub_b1 if args.sub_b1 is not None else args.b1
    c = args.sub_c if args.sub_c is not None else args.c
    overrides: Dict[str, Any] = {
        "model.b1": b1,
        "output_format": args.format,
        "logging.level": args.log_level,
        "seed": args.seed,
    }
    if c is not None:
        overrides["model.c"] = c
        overrides["model.a3"] = config.model.a2 + c
    return overrides


def _point(args: argparse.Namespace) -> ChartPoint:
    return ChartPoint(z=args.z, t=args.t, y=args.Y)


def _build_command(
    args: argparse.Namespace, config: Config, logger: LoggingService
) -> BaseCommand:
    if args.command == "classify":
        return ClassifyCommand(config, _point(args), logger)
    if args.command == "curve":
        return CurveCommand(
            config,
            HugoniotCurve(k=args.k, l=args.l, prime=args.prime),
            (args.z_min, args.z_max),
            args.n,
            logger,
        )
    if args.command == "arcs":
        by_curve = args.k is not None and args.l is not None
        by_point = None not in (args.z, args.t, args.Y)
        if by_curve == by_point:
            raise argparse.ArgumentTypeError("arcs needs either --k/--l or --z/--t/--Y")
        if by_curve:
            return ArcsCommand(
                config, curve=HugoniotCurve(k=args.k, l=args.l), samples=args.samples, logger=logger
            )
        return ArcsCommand(config, point=_point(args), samples=args.samples, logger=logger)
    if args.command == "mesh":
        updates: Dict[str, Any] = {
            key: tuple(getattr(args, key))
            for key in ("z_bounds", "t_bounds", "y_bounds")
            if getattr(args, key) is not None
        }
        if args.resolution is not None:
            updates["resolution"] = (args.resolution,) * 3
        grid = GridConfig.model_validate({**config.grid.model_dump(), **updates})
        return MeshCommand(config, args.surface, grid, logger)
    if args.list:
        return ListChecksCommand(config, logger)
    return VerifyCommand(config, args.check or None, args.samples, logger)


def render(output: CommandOutput, output_format: str) -> str:
    writer = writer_for(output_format)
    if output_format == "csv" and output.header is not None:
        return writer.write_rows(output.header, output.rows)
    return writer.write_document(output.document)


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None) -> int:
    """Run the CLI and return the process exit code"""
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        config = load_config(args.config)
        config = config.with_overrides(_overrides(args, config))
    except PydanticValidationError as e:
        sys.stderr.write(f"invalid parameters: {e.errors()[0]['msg']}\n")
        return ExitCode.USAGE
    except Exception as e:
        sys.stderr.write(f"{e}\n")
        return exit_code_for(e)

    configure_logging(config.logging)
    logger = LoggingService("cli", command=args.command)

    try:
        command = _build_command(args, config, logger)
    except argparse.ArgumentTypeError as e:
        parser.print_usage(sys.stderr)
        sys.stderr.write(f"{parser.prog}: error: {e}\n")
        return ExitCode.USAGE
    except Exception as e:
        logger.error(str(e))
        return exit_code_for(e)

    result = command.execute()
    rendered = result.map(lambda output: render(output, config.output_format))
    if rendered.is_failure():
        report = getattr(rendered.error, "output", None)
        if isinstance(report, CommandOutput):
            stdout.write(render(report, config.output_format))
        sys.stderr.write(f"{rendered.error}\n")
        return exit_code_for(rendered.error)

    text = rendered.value
    if args.command == "mesh" and args.out is not None:
        try:
            path = write_text(args.out, text)
        except Exception as e:
            sys.stderr.write(f"{e}\n")
            return exit_code_for(e)
        logger.info(f"mesh written to {path}")
    else:
        stdout.write(text)
    return ExitCode.SUCCESS
