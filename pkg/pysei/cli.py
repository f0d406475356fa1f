from __future__ import annotations

import argparse
import logging
import sys
from typing import Any, Optional

from .catalog import Catalog
from .config import ExperimentConfig
from .problems import Problems
from .pysei import PySei
from .reference import Reference
from .settings import Settings
from .stepper import Stepper

logger = logging.getLogger(__name__)


def parse_cli_args(argv: Optional[list[str]] = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="pysei",
        description="Integrate semilinear problems with symmetric and "
        "symplectic exponential integrators, measure errors and verify "
        "method properties. Results are written as CSV.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument(
        "--debug",
        help="Enable debug logging.",
        default=False,
        action="store_true",
        required=False,
    )
    parser.add_argument(
        "--dev",
        help="Enable dev logging, very verbose.",
        default=False,
        action="store_true",
        required=False,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    for experiment in ExperimentConfig.EXPERIMENTS:
        cmd = sub.add_parser(
            experiment,
            help=f"Run the {experiment} experiment.",
            formatter_class=argparse.ArgumentDefaultsHelpFormatter,
        )
        cmd.add_argument(
            "--config",
            help="JSON config file, command line flags override it.",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--problem",
            help="Problem to integrate.",
            choices=Problems.LABELS,
            default=None,
        )
        cmd.add_argument(
            "--param",
            help="Problem parameters, k=...,omega=... or r=...,theta=...",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--methods",
            help="Comma separated method names, all built-in if unset.",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--tableau",
            help="JSON tableau file of an extra method, may be repeated.",
            action="append",
            default=None,
        )
        cmd.add_argument(
            "--h-list",
            help="Comma separated step sizes, fractions allowed (1/8,1/16).",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--t-end",
            help="Final time.",
            type=float,
            default=None,
        )
        cmd.add_argument(
            "--t-end-list",
            help="Comma separated final times.",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--out",
            help="Output CSV file, - for stdout.",
            type=str,
            default=None,
        )
        cmd.add_argument(
            "--fp-tol",
            help="Stage solver relative tolerance.",
            type=float,
            default=None,
        )
        cmd.add_argument(
            "--max-iters",
            help="Stage solver iteration cap per step.",
            type=int,
            default=None,
        )
        cmd.add_argument(
            "--reference-refinement",
            help="Ratio of the smallest h to the numeric reference step.",
            type=int,
            default=None,
        )
        cmd.add_argument(
            "--no-timing",
            help="Leave wall_time empty so output is reproducible.",
            default=False,
            action="store_true",
        )
        cmd.add_argument(
            "--trajectory-out",
            help="Write trajectories as CSV (run only).",
            type=str,
            default=None,
        )

    sub.add_parser("list-methods", help="List the built-in methods.")
    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> ExperimentConfig:
    """
    Merge a JSON config file, if given, with command line overrides

    :param Namespace args: Parsed arguments of an experiment subcommand
    :rtype: ExperimentConfig
    """
    data: dict[str, Any] = {}
    if args.config:
        data = ExperimentConfig.from_json_file(args.config).to_dict()
        if data["experiment"] != args.command:
            raise ValueError(
                f"Config file {args.config} is for {data['experiment']}, "
                f"not {args.command}"
            )
    data["experiment"] = args.command

    overrides: dict[str, Any] = {
        "problem": args.problem,
        "params": Problems.parse_params(args.param) if args.param else None,
        "methods": (
            [m.strip() for m in args.methods.split(",") if m.strip()]
            if args.methods
            else None
        ),
        "tableau_files": args.tableau,
        "h_list": (
            ExperimentConfig.parse_list(args.h_list) if args.h_list else None
        ),
        "t_end": args.t_end,
        "t_end_list": (
            ExperimentConfig.parse_list(args.t_end_list)
            if args.t_end_list
            else None
        ),
        "output_path": args.out,
        "fp_tol": args.fp_tol,
        "max_iters": args.max_iters,
        "reference_refinement": args.reference_refinement,
        "trajectory_out": args.trajectory_out,
    }
    if args.problem and not args.param and data.get("problem") != args.problem:
        data.pop("params", None)
    if args.t_end is not None:
        data.pop("t_end_list", None)
    if args.t_end_list:
        data.pop("t_end", None)
    data.update({k: v for k, v in overrides.items() if v is not None})
    if args.no_timing:
        data["timing"] = False
    return ExperimentConfig.from_dict(data)


def list_methods() -> None:
    print("name,stages,order,kind")
    for method in Catalog.builtin_methods().values():
        kind = "classical RK" if method.classical else "SEI"
        print(f"{method.name},{method.s},{method.order},{kind}")


def main(argv: Optional[list[str]] = None) -> int:
    """
    Command line entry point, return the process exit code

    :rtype: int
    """
    args = parse_cli_args(argv)
    Settings.DEBUG = args.debug
    Settings.DEV = args.dev

    if args.command == "list-methods":
        list_methods()
        return 0

    try:
        config = build_config(args)
        ok = PySei(config).run()
    except (
        ValueError,
        KeyError,
        OSError,
        Reference.Untrusted,
        Stepper.NonConvergence,
    ) as e:
        logger.error(f"{__name__}: {e}")
        print(f"pysei: error: {e}", file=sys.stderr)
        return 2
    return 0 if ok else 1
