"""The main command line code for avfwave."""

##############################################################################
# Backward compatibility.
from __future__ import annotations

##############################################################################
# Python imports.
import argparse
import logging
import sys
from importlib.metadata import version
from pathlib import Path
from typing import Callable, Dict, List, Optional

##############################################################################
# Rich imports.
from rich.logging import RichHandler
from rich.progress import BarColumn, MofNCompleteColumn, Progress, TextColumn, TimeElapsedColumn

##############################################################################
# Local imports.
from .. import __version__
from ..core.errors import AVFWaveError
from ..harness.config import ExperimentConfig
from ..harness.output import MANIFEST_NAME
from ..harness.studies import (
    Progress as StudyProgress,
    StudyResult,
    energy_study,
    exp_moment_study,
    simulate,
    spatial_convergence,
    temporal_convergence,
)
from .viewer import RunViewer

##############################################################################
log = logging.getLogger(__name__)

STUDIES: Dict[str, Callable[..., StudyResult]] = {
    "energy-study": energy_study,
    "converge-space": spatial_convergence,
    "converge-time": temporal_convergence,
    "exp-moment": exp_moment_study,
}
"""The Monte Carlo studies, by subcommand."""


##############################################################################
def existing_path(path: str) -> Path:
    """Check that a path we're being asked to use exists.

    Args:
        path: The argument.

    Returns:
        The `Path` if it looks okay.
    """
    if not (candidate := Path(path)).exists():
        raise argparse.ArgumentTypeError(f"{path} does not exist")
    return candidate


##############################################################################
def positive_int(value: str) -> int:
    """Check that an argument is a positive whole number.

    Args:
        value: The argument.

    Returns:
        The number.
    """
    try:
        if (number := int(value)) >= 1:
            return number
    except ValueError:
        pass
    raise argparse.ArgumentTypeError(f"{value} is not a positive whole number")


##############################################################################
def _add_run_options(parser: argparse.ArgumentParser) -> None:
    """Add the options every study subcommand takes.

    Args:
        parser: The subcommand's parser.
    """
    parser.add_argument(
        "-c",
        "--config",
        type=existing_path,
        help="A TOML configuration, or the manifest.json of an earlier run.",
    )
    parser.add_argument("-o", "--out", help="The directory to write the results to.")
    parser.add_argument("--seed", type=int, help="The base seed of the noise streams.")
    parser.add_argument(
        "-n", "--trajectories", type=positive_int, help="The number of trajectories."
    )
    parser.add_argument(
        "-w", "--workers", type=positive_int, help="The number of worker processes."
    )


##############################################################################
def get_args(argv: Optional[List[str]] = None) -> argparse.Namespace:
    """Get the command line arguments.

    Args:
        argv (optional): The arguments to parse; the process's if not given.

    Returns:
        The arguments.
    """

    # Create the argument parser object.
    parser = argparse.ArgumentParser(
        prog="avfwave",
        description="Simulate the stochastic cubic wave equation with a splitting AVF scheme.",
        epilog=f"v{__version__}",
    )

    # Add --verbose
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="Log more; give twice for debug output.",
    )

    # Add --version
    parser.add_argument(
        "--version",
        help="Show version information.",
        action="version",
        version=f"%(prog)s {__version__} (Textual v{version('textual')})",
    )

    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    _add_run_options(
        commands.add_parser("simulate", help="Run a single trajectory and tabulate it.")
    )
    _add_run_options(
        commands.add_parser("energy-study", help="Check the mean energy growth law.")
    )
    _add_run_options(
        commands.add_parser("converge-space", help="Estimate the spatial order.")
    )
    _add_run_options(
        commands.add_parser("converge-time", help="Estimate the temporal order.")
    )
    moment = commands.add_parser("exp-moment", help="Estimate exponential moments.")
    _add_run_options(moment)
    moment.add_argument(
        "--c-list",
        type=float,
        nargs="+",
        metavar="C",
        help="The exponent scales to estimate for.",
    )

    view = commands.add_parser("view", help="Browse the output of a run.")
    view.add_argument(
        "run", type=existing_path, default=".", nargs="?", help="A run directory or manifest."
    )

    # Return the arguments.
    return parser.parse_args(argv)


##############################################################################
def setup_logging(verbosity: int) -> None:
    """Send log output through Rich.

    Args:
        verbosity: How many times `--verbose` was given.
    """
    logging.basicConfig(
        level=(logging.WARNING, logging.INFO, logging.DEBUG)[min(verbosity, 2)],
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(show_path=verbosity > 1)],
    )


##############################################################################
def load_config(args: argparse.Namespace) -> ExperimentConfig:
    """Resolve the configuration of a run.

    Args:
        args: The command line arguments.

    Returns:
        The configuration file (or defaults) with the command line applied.
    """
    config = ExperimentConfig() if args.config is None else ExperimentConfig.load(args.config)
    return config.with_overrides(
        directory=args.out,
        seed=args.seed,
        trajectories=args.trajectories,
        workers=args.workers,
    )


##############################################################################
def run_study(args: argparse.Namespace, config: ExperimentConfig) -> StudyResult:
    """Run the study a subcommand names, showing progress.

    Args:
        args: The command line arguments.
        config: The resolved configuration.

    Returns:
        The study result.
    """
    if args.command == "simulate":
        return simulate(config)
    with Progress(
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        MofNCompleteColumn(),
        TimeElapsedColumn(),
        transient=True,
    ) as progress:
        task = progress.add_task(args.command, total=config.mc.trajectories)
        advance: StudyProgress = lambda: progress.advance(task)
        if args.command == "exp-moment":
            return exp_moment_study(config, args.c_list, progress=advance)
        return STUDIES[args.command](config, progress=advance)


##############################################################################
def main(argv: Optional[List[str]] = None) -> None:
    """Main entry point for avfwave.

    Args:
        argv (optional): The arguments to use; the process's if not given.
    """
    args = get_args(argv)
    setup_logging(args.verbose)
    if args.command == "view":
        RunViewer(args.run).run()
        return
    try:
        result = run_study(args, load_config(args))
    except AVFWaveError as error:
        log.error("%s", error)
        sys.exit(1)
    print(f"Wrote {result.csv_path} and {result.directory / MANIFEST_NAME}")


### avfwave.py ends here
