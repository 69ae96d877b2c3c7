"""
Evaluate a complexity curve on a grid and write it as CSV.

Usage:
    tls-complexity curve --model lz-diag --min 0.01 --max 100 --points 400 --log-grid --output lz.csv

Without ``--output`` the CSV goes to standard output.
"""

import os

from ..exporters import MODEL_NAMES, CurveExporter, CurveRequest, CurveSpec
from ..targets import FileTarget
from . import EXIT_OK, BaseCommand


def add_model_parameters(parser) -> None:
    parser.add_argument("--model", required=True, choices=MODEL_NAMES, help="Which curve to evaluate")
    parser.add_argument("--chi", type=float, default=None, help="epsilon/W for bin-lambda and box-lambda (default: 0)")
    parser.add_argument("--zeta", type=float, default=None, help="Fixed zeta for bin-lambda-inv and box-lambda-inv")
    parser.add_argument("--alpha", type=float, default=None, help="Field ratio mu_B B/(zJ) for ising (default: 0)")


def curve_spec_from_options(options) -> CurveSpec:
    return CurveSpec(options["model"], chi=options["chi"], zeta=options["zeta"], alpha=options["alpha"])


class Command(BaseCommand):
    help = "Write S, R2 and SC along a sweep as CSV with header x,S,R2,SC"

    def add_arguments(self, parser):
        add_model_parameters(parser)
        parser.add_argument("--min", dest="lo", type=float, required=True, help="First grid point")
        parser.add_argument("--max", dest="hi", type=float, required=True, help="Last grid point")
        parser.add_argument("--points", type=int, default=200, help="Number of grid points (default: 200)")
        parser.add_argument("--log-grid", action="store_true", help="Space grid points geometrically")
        parser.add_argument("--output", type=str, default=None, help="CSV file to write (default: standard output)")

    def handle(self, **options) -> int:
        request = CurveRequest(
            curve_spec_from_options(options),
            lo=options["lo"],
            hi=options["hi"],
            points=options["points"],
            log_grid=options["log_grid"],
            normalized=options["normalized"],
        )
        exporter = CurveExporter(progress=options["verbosity"] >= 2)

        output = options["output"]
        if output is None:
            self.stdout.write(exporter.format_csv(exporter.rows(request)))
            return EXIT_OK

        target = FileTarget.for_file(output, overwrite=options["overwrite"])
        exporter.export(request, target, os.path.basename(output))
        return EXIT_OK
