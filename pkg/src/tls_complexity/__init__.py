"""
TLS Complexity - entropic complexity of two-level systems.

Computes the Shannon entropy, order-2 Renyi entropy and their difference for
Landau-Zener sweeps, disorder-averaged ensembles and thermal ensembles,
locates complexity maxima and checks the disorder averages by Monte Carlo.
"""

from .entropy import EntropyTriple, complexity_from_coeff, complexity_from_p, critical_r, entropy_from_r
from .exceptions import (
    BoundaryMaximumError,
    DomainError,
    NoSignChangeError,
    NonConvergenceError,
    NonFiniteError,
    UnsupportedModelError,
)
from .models import (
    BlochAverage,
    BlochState,
    ModelKind,
    ModelSpec,
    bloch_average,
    bloch_report,
    find_model_maximum,
    model_complexity,
    sweep_chi_inverse,
)
from .optimize import Bracket, MaximumResult, find_root, maximize_scalar
from .sampling import DeviationReport, McEstimate, SampleConfig, compare, exhaustive_binary, sample_bloch
from .thermal import (
    IsingPoint,
    ParamagnetPoint,
    curie_weiss_solve,
    find_t_star,
    ising_complexity,
    paramagnet_complexity,
)

__version__ = "0.1.0"
__all__ = [
    "EntropyTriple",
    "entropy_from_r",
    "complexity_from_p",
    "complexity_from_coeff",
    "critical_r",
    "DomainError",
    "NoSignChangeError",
    "NonFiniteError",
    "UnsupportedModelError",
    "NonConvergenceError",
    "BoundaryMaximumError",
    "ModelKind",
    "ModelSpec",
    "BlochAverage",
    "BlochState",
    "bloch_average",
    "bloch_report",
    "model_complexity",
    "sweep_chi_inverse",
    "find_model_maximum",
    "Bracket",
    "MaximumResult",
    "maximize_scalar",
    "find_root",
    "SampleConfig",
    "McEstimate",
    "DeviationReport",
    "sample_bloch",
    "exhaustive_binary",
    "compare",
    "ParamagnetPoint",
    "IsingPoint",
    "paramagnet_complexity",
    "curie_weiss_solve",
    "ising_complexity",
    "find_t_star",
]
