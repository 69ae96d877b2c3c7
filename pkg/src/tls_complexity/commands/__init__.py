"""
Subcommands of the ``tls-complexity`` command line.

Each module defines a ``Command`` with a ``help`` string, an
``add_arguments(parser)`` hook and ``handle(**options)`` returning an exit
code.
"""

import argparse
import json
import logging
import math
import os
import sys
from typing import Any, Dict, List, Optional, TextIO

from .. import settings
from ..exceptions import NonConvergenceError
from ..targets import FileTarget

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3
EXIT_BOUNDARY = 4


class CommandError(Exception):
    """A command failed; ``exit_code`` is returned from ``main``."""

    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def finite_or_none(value: float) -> Optional[float]:
    """JSON has no infinities; non-finite numbers are written as null."""
    return value if math.isfinite(value) else None


class BaseCommand:
    help = ""

    def __init__(self, stdout: Optional[TextIO] = None, stderr: Optional[TextIO] = None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def add_common_arguments(self, parser: argparse.ArgumentParser) -> None:
        parser.add_argument(
            "--normalized",
            action="store_true",
            help="Report entropies in units of ln 2 instead of nats",
        )
        parser.add_argument(
            "--meta",
            type=str,
            default=None,
            metavar="PATH",
            help="Write a JSON sidecar recording the command line to PATH",
        )
        parser.add_argument(
            "--overwrite",
            action="store_true",
            help="Replace output files that already exist",
        )
        parser.add_argument(
            "-v",
            "--verbosity",
            type=int,
            choices=sorted(settings.VERBOSITY_LEVELS),
            default=1,
            help="0 errors only, 1 warnings (default), 2 info and progress bars, 3 debug",
        )

    def handle(self, **options) -> int:
        raise NotImplementedError("subclasses of BaseCommand must provide a handle() method")

    def execute(self, name: str, argv: List[str], **options) -> int:
        """
        Run ``handle`` and map its failures to exit codes.

        The ``--meta`` sidecar is written whatever the outcome, recording the
        exit code the run ends with.
        """
        message = None
        try:
            exit_code = self.handle(**options)
        except CommandError as exc:
            message, exit_code = str(exc), exc.exit_code
        except OSError as exc:
            message, exit_code = f"I/O error: {exc}", EXIT_IO
        except ValueError as exc:
            message, exit_code = str(exc), EXIT_USAGE
        except NonConvergenceError as exc:
            message, exit_code = str(exc), EXIT_CHECK_FAILED

        if message is not None:
            self.stderr.write(f"tls-complexity {name}: error: {message}\n")
            logger.debug("%s failed with exit code %d", name, exit_code)

        if options.get("meta"):
            try:
                self.write_meta(options["meta"], name, argv, options, exit_code)
            except OSError as exc:
                self.stderr.write(f"tls-complexity {name}: error: I/O error: {exc}\n")
                exit_code = exit_code or EXIT_IO
        return exit_code

    def write_record(self, record: Dict[str, Any]) -> None:
        self.stdout.write(json.dumps(record, allow_nan=False) + "\n")

    def write_meta(self, path: str, name: str, argv: List[str], options: Dict[str, Any], exit_code: int) -> None:
        from .. import __version__

        record = {
            "program": "tls-complexity",
            "version": __version__,
            "command": name,
            "argv": list(argv),
            "options": {key: value for key, value in options.items() if key != "meta"},
            "exit_code": exit_code,
        }
        target = FileTarget.for_file(path, overwrite=options.get("overwrite", False))
        result = target.write_json(os.path.basename(path), record)
        logger.info("metadata written to %s", result["file_path"])
