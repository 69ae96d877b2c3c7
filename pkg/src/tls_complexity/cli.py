"""
Command-line entry point: ``tls-complexity <command> [options]``.

Exit codes: 0 success, 1 failed check, 2 invalid arguments, 3 file I/O
error, 4 maximum on a bracket edge.
"""

import argparse
import copy
import logging
import logging.config
import sys
from typing import List, Optional

from . import __version__, settings
from .commands import EXIT_USAGE, BaseCommand, bloch, curve, maximum, mc_check


COMMANDS = {
    "curve": curve.Command,
    "max": maximum.Command,
    "mc-check": mc_check.Command,
    "bloch": bloch.Command,
}


def configure_logging(verbosity: int) -> None:
    config = copy.deepcopy(settings.LOGGING)
    config["loggers"]["tls_complexity"]["level"] = settings.VERBOSITY_LEVELS[verbosity]
    logging.config.dictConfig(config)


def create_parser(commands: dict) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tls-complexity",
        description="Entropic complexity S - R2 of two-level systems",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, command in commands.items():
        subparser = subparsers.add_parser(name, help=command.help, description=command.help)
        command.add_arguments(subparser)
        command.add_common_arguments(subparser)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    commands = {name: command_class() for name, command_class in COMMANDS.items()}
    parser = create_parser(commands)

    try:
        options = vars(parser.parse_args(argv))
    except SystemExit as exc:
        # argparse exits with 2 on bad arguments and 0 for --help/--version
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE

    name = options.pop("command")
    command: BaseCommand = commands[name]
    configure_logging(options["verbosity"])

    return command.execute(name, argv, **options)


if __name__ == "__main__":
    sys.exit(main())
