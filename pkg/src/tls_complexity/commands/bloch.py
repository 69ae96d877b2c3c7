"""
Report the Bloch-sphere angles and populations of a Landau-Zener eigenstate.

Usage:
    tls-complexity bloch --model lz-diag --x 1.110668
"""

import math

from ..entropy import normalized_amplitude
from ..models import LZ_KINDS, ModelKind, ModelSpec, bloch_report, lz_coeff_diag, lz_coeff_offdiag, model_complexity
from . import EXIT_OK, BaseCommand

LZ_MODEL_NAMES = sorted(kind.value for kind in LZ_KINDS)


class Command(BaseCommand):
    help = "Print populations and Bloch angles of the |+> and |-> eigenstates as JSON"

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True, choices=LZ_MODEL_NAMES, help="Landau-Zener model")
        parser.add_argument("--x", type=float, required=True, help="Sweep coordinate")

    def handle(self, **options) -> int:
        model = ModelSpec(ModelKind(options["model"]))
        x = options["x"]
        state = bloch_report(model, x)
        cval = lz_coeff_diag(x) if model.kind is ModelKind.LZ_DIAGONAL else lz_coeff_offdiag(x)

        self.write_record(
            {
                "pop1": state.pop1,
                "pop0": state.pop0,
                "theta_plus_rad": state.theta_plus,
                "theta_plus_deg": math.degrees(state.theta_plus),
                "theta_minus_rad": state.theta_minus,
                "theta_minus_deg": math.degrees(state.theta_minus),
                "phi_plus": state.phi_plus,
                "phi_minus": state.phi_minus,
                "amplitude_plus": normalized_amplitude(cval),
                "sc": model_complexity(model, x, options["normalized"]).complexity,
            }
        )
        return EXIT_OK
