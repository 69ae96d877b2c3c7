"""
Locate the complexity maximum of a curve.

Usage:
    tls-complexity max --model box-v
    tls-complexity max --model ising --alpha 0.2133
    tls-complexity max --model bin-lambda-inv --zeta 0.01 --min 20 --max 1000

Prints {model, params, x_star, sc_star_nats, sc_star_normalized, r_at_max}
as JSON. A maximum on the bracket edge is still printed but exits with 4.
"""

import argparse
import logging

from .. import settings
from ..entropy import LN2
from ..optimize import Bracket
from . import EXIT_BOUNDARY, EXIT_OK, BaseCommand
from .curve import add_model_parameters, curve_spec_from_options

logger = logging.getLogger(__name__)


class Command(BaseCommand):
    help = "Locate the sweep value of maximal complexity and print it as JSON"

    def add_arguments(self, parser):
        add_model_parameters(parser)
        parser.add_argument("--min", dest="lo", type=float, default=None, help="Bracket lower end (default per model)")
        parser.add_argument("--max", dest="hi", type=float, default=None, help="Bracket upper end (default per model)")
        parser.add_argument(
            "--log-grid",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="Search in log coordinates (default per model)",
        )
        parser.add_argument(
            "--tol",
            type=float,
            default=settings.DEFAULT_TOL,
            help=f"Absolute tolerance on x_star (default: {settings.DEFAULT_TOL:g})",
        )

    def handle(self, **options) -> int:
        spec = curve_spec_from_options(options)
        default = spec.default_bracket()
        bracket = Bracket(
            default.lo if options["lo"] is None else options["lo"],
            default.hi if options["hi"] is None else options["hi"],
            default.log_scale if options["log_grid"] is None else options["log_grid"],
        )

        result = spec.maximize(bracket, tol=options["tol"])
        sc_nats = spec.triple(result.x_star).complexity
        self.write_record(
            {
                "model": spec.model,
                "params": spec.params(),
                "x_star": result.x_star,
                "sc_star_nats": sc_nats,
                "sc_star_normalized": sc_nats / LN2,
                "r_at_max": spec.radius(result.x_star),
                "sc_star": sc_nats / LN2 if options["normalized"] else sc_nats,
                "at_boundary": result.at_boundary,
            }
        )

        if result.at_boundary:
            self.stderr.write(
                f"Maximum of {spec.model} sits on the bracket edge at x = {result.x_star!r}; "
                f"widen --min/--max [{bracket.lo}, {bracket.hi}]\n"
            )
            return EXIT_BOUNDARY
        logger.info("%s: x* = %.9g", spec.model, result.x_star)
        return EXIT_OK
