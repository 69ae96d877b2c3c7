"""
Check a closed-form disorder average against a seeded Monte Carlo estimate.

Usage:
    tls-complexity mc-check --model box-v --kappa 1.8486 --samples 1000000 --seed 7
    tls-complexity mc-check --model box-lambda --chi 0.5 --tau 0.54 --workers 4

Prints {z_s, z_c, sc_abs_dev, n, seed, pass} as JSON and exits with 1 when
either |z| exceeds 4. Binary ensembles are averaged exhaustively unless
``--no-exhaustive`` is given.
"""

import argparse

from .. import settings
from ..entropy import LN2
from ..models import COUPLING_KINDS, DISORDER_KINDS, LAMBDA_KINDS, ModelKind, ModelSpec
from ..sampling import SampleConfig, compare
from . import EXIT_CHECK_FAILED, EXIT_OK, BaseCommand, CommandError, finite_or_none

DISORDER_MODEL_NAMES = sorted(kind.value for kind in DISORDER_KINDS)


class Command(BaseCommand):
    help = "Compare Monte Carlo disorder averages with their closed forms"

    def add_arguments(self, parser):
        parser.add_argument("--model", required=True, choices=DISORDER_MODEL_NAMES, help="Disorder ensemble")
        parser.add_argument("--chi", type=float, default=None, help="epsilon/W for level noise (default: 0)")
        parser.add_argument("--tau", type=float, default=None, help="2V/W for level noise")
        parser.add_argument("--kappa", type=float, default=None, help="2V0/epsilon for coupling noise")
        parser.add_argument("--samples", type=int, default=100_000, help="Number of draws (default: 100000)")
        parser.add_argument(
            "--seed",
            type=int,
            default=settings.MC_DEFAULT_SEED,
            help=f"Unsigned 64-bit seed (default: {settings.MC_DEFAULT_SEED})",
        )
        parser.add_argument("--workers", type=int, default=1, help="Threads drawing sample blocks (default: 1)")
        parser.add_argument(
            "--exhaustive",
            action=argparse.BooleanOptionalAction,
            default=None,
            help="Average binary ensembles over both values exactly (default: on for binary models)",
        )

    def model_point(self, options):
        kind = ModelKind(options["model"])
        if kind in LAMBDA_KINDS:
            if options["kappa"] is not None:
                raise CommandError(f"--kappa does not apply to {kind.value}; use --chi and --tau")
            if options["tau"] is None:
                raise CommandError(f"{kind.value} requires --tau")
            chi = 0.0 if options["chi"] is None else options["chi"]
            return ModelSpec(kind, chi=chi), options["tau"]
        if kind in COUPLING_KINDS:
            if options["chi"] is not None or options["tau"] is not None:
                raise CommandError(f"--chi and --tau do not apply to {kind.value}; use --kappa")
            if options["kappa"] is None:
                raise CommandError(f"{kind.value} requires --kappa")
            return ModelSpec(kind), options["kappa"]
        raise CommandError(f"{kind.value} has no disorder to sample")

    def handle(self, **options) -> int:
        if options["samples"] < 1:
            raise CommandError(f"--samples must be >= 1, got {options['samples']}")
        if options["workers"] < 1:
            raise CommandError(f"--workers must be >= 1, got {options['workers']}")

        model, v = self.model_point(options)
        config = SampleConfig.from_model(model, v, n_samples=options["samples"], seed=options["seed"])
        report = compare(
            config,
            workers=options["workers"],
            exhaustive=options["exhaustive"],
            progress=options["verbosity"] >= 2,
        )

        sc_abs_dev = report.sc_abs_dev / LN2 if options["normalized"] else report.sc_abs_dev
        self.write_record(
            {
                "z_s": finite_or_none(report.z_s),
                "z_c": finite_or_none(report.z_c),
                "sc_abs_dev": sc_abs_dev,
                "n": report.estimate.n,
                "seed": config.seed,
                "pass": report.passed,
                "rng_algorithm": report.estimate.rng_algorithm,
            }
        )
        return EXIT_OK if report.passed else EXIT_CHECK_FAILED
