"""
Default settings for TLS Complexity.

There are no configuration files or environment variables; everything a run
needs comes from its arguments, falling back to the constants below.
"""

# Entropies
R_CLAMP_BAND = 1e-9
CRITICAL_R_TOL = 1e-15

# Optimizer
DEFAULT_TOL = 1e-6
GRID_SCAN_POINTS = 64
ROOT_MAX_ITERATIONS = 200

# Closed forms switch to series expansions below this argument
SERIES_THRESHOLD = 1e-6

# Entropies switch to a power series in r below this Bloch radius
ENTROPY_SERIES_RADIUS = 1e-3

# Curie-Weiss solver
CW_RESIDUAL_TOL = 1e-12
CW_MAX_ITERATIONS = 200
CW_LOWER_FLOOR = 1e-16
T_STAR_BRACKET = (0.1, 5.0)

# Monte Carlo
MC_BLOCK_SIZE = 1 << 16
MC_Z_FAIL = 4.0
MC_DEFAULT_SEED = 20240601
RNG_ALGORITHM = "numpy.random.PCG64/SeedSequence"

# Default sweep brackets (lo, hi, log_scale) per command-line model name
DEFAULT_BRACKETS = {
    "lz-diag": (0.01, 100.0, True),
    "lz-offd": (0.01, 100.0, True),
    "bin-lambda": (0.01, 100.0, True),
    "bin-v": (0.01, 100.0, True),
    "box-lambda": (0.01, 100.0, True),
    "box-v": (0.01, 100.0, True),
    "bin-lambda-inv": (0.01, 1e4, True),
    "box-lambda-inv": (0.01, 1e4, True),
    "paramagnet": (0.01, 10.0, True),
    "ising": (0.1, 5.0, False),
}

# Logging, installed by the command-line front end only
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "simple": {
            "format": "%(levelname)s %(name)s: %(message)s",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "simple",
            "level": "DEBUG",
        },
    },
    "loggers": {
        "tls_complexity": {
            "handlers": ["console"],
            "level": "WARNING",
            "propagate": False,
        },
    },
}

VERBOSITY_LEVELS = {0: "ERROR", 1: "WARNING", 2: "INFO", 3: "DEBUG"}
