"""
Command-line application.
"""

import argparse
import sys
from pathlib import Path
from typing import List, Optional

from src.cli import commands
from src.cli.error_handler import handle_error
from src.config.logging import configure_logging, get_logger
from src.config.settings import settings
from src.domain.exceptions.usage_error import UsageError

logger = get_logger(__name__)


class CommandParser(argparse.ArgumentParser):
    """Argument parser that raises UsageError instead of exiting."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _add_run_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--out",
        type=Path,
        default=None,
        help=f"output directory (default: {settings.OUTPUT_DIR})",
    )
    parser.add_argument(
        "--set",
        dest="overrides",
        action="append",
        default=[],
        metavar="KEY=VALUE",
        help="override a scenario or gain field; may be repeated",
    )
    parser.add_argument("--seed", type=int, default=None, help="perturbation seed")


def build_parser() -> CommandParser:
    """Parser for all subcommands."""
    parser = CommandParser(
        prog="mgc",
        description="Modular geometric control of serial chains: run, compare and check.",
    )
    parser.add_argument(
        "--version",
        action="version",
        version=f"{settings.APP_NAME} {settings.APP_VERSION}",
    )
    parser.add_argument("--log-level", default=None, help="overrides LOG_LEVEL")
    subparsers = parser.add_subparsers(dest="command", parser_class=CommandParser)

    run = subparsers.add_parser("run", help="run one scenario")
    run.add_argument("scenario", help="document path or bundled name")
    _add_run_options(run)

    compare = subparsers.add_parser("compare", help="run scenarios and tabulate them")
    compare.add_argument("scenarios", nargs="*", help="document paths or bundled names")
    _add_run_options(compare)

    check = subparsers.add_parser("check", help="run the property suite")
    check.add_argument("--filter", default=None, help="property group or name")
    check.add_argument(
        "--model",
        default=commands.DEFAULT_CHECK_MODEL,
        help="document whose chain the kinematics and control properties use",
    )
    check.add_argument("--seed", type=int, default=None, help="sampling seed")

    schema = subparsers.add_parser("schema", help="print the configuration schema")
    schema.add_argument("--out", type=Path, default=None, help="write schema.json here")
    return parser


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "run":
        return commands.cmd_run(
            args.scenario, args.out or settings.OUTPUT_DIR, args.overrides, args.seed
        )
    if args.command == "compare":
        return commands.cmd_compare(
            args.scenarios, args.out or settings.OUTPUT_DIR, args.overrides, args.seed
        )
    if args.command == "check":
        return commands.cmd_check(args.filter, args.model, args.seed)
    if args.command == "schema":
        return commands.cmd_schema(args.out)
    raise UsageError("a command is required: run, compare, check or schema")


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run the command and return its exit code."""
    parser = build_parser()

    def echo(message: str) -> None:
        print(message, file=sys.stderr)

    try:
        args = parser.parse_args(argv)
        configure_logging(args.log_level)
        return _dispatch(args)
    except Exception as exc:
        return handle_error(exc, echo)
