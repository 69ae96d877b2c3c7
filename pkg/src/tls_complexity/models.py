"""
Analytic two-level-system models.

The Hamiltonian H = (epsilon - lambda)/2 sigma_z + V sigma_x is diagonalized
by a rotation with sin(phi) = 2V/Delta and cos(phi) = (epsilon - lambda)/Delta,
Delta = sqrt((epsilon - lambda)^2 + 4V^2). Averaging over a random lambda or V
gives a density matrix with Bloch components s = <sin(phi)>, c = <cos(phi)>
and radius r = sqrt(s^2 + c^2).

Six models are supported, all in dimensionless sweep variables:

- ``LZ_DIAGONAL`` / ``LZ_OFF_DIAGONAL``: deterministic Landau-Zener sweeps of
  the diagonal or the off-diagonal element, swept in x.
- ``BINARY_LAMBDA`` / ``BOX_LAMBDA``: level noise lambda = +-W or uniform on
  [-W, W], swept in tau = 2V/W at fixed chi = epsilon/W.
- ``BINARY_V`` / ``BOX_V``: coupling noise V = +-V0 or uniform on [-V0, V0],
  swept in kappa = 2V0/epsilon.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from . import settings
from .entropy import EntropyTriple, complexity_from_coeff, entropy_from_r, normalized_amplitude
from .exceptions import DomainError, NonFiniteError, UnsupportedModelError
from .optimize import Bracket, MaximumResult, maximize_scalar

logger = logging.getLogger(__name__)


class ModelKind(str, Enum):
    LZ_DIAGONAL = "lz-diag"
    LZ_OFF_DIAGONAL = "lz-offd"
    BINARY_LAMBDA = "bin-lambda"
    BINARY_V = "bin-v"
    BOX_LAMBDA = "box-lambda"
    BOX_V = "box-v"

    @property
    def sweep_variable(self) -> str:
        if self in LZ_KINDS:
            return "x"
        if self in LAMBDA_KINDS:
            return "tau"
        return "kappa"

    @property
    def is_lz(self) -> bool:
        return self in LZ_KINDS


LZ_KINDS = frozenset({ModelKind.LZ_DIAGONAL, ModelKind.LZ_OFF_DIAGONAL})
LAMBDA_KINDS = frozenset({ModelKind.BINARY_LAMBDA, ModelKind.BOX_LAMBDA})
COUPLING_KINDS = frozenset({ModelKind.BINARY_V, ModelKind.BOX_V})
DISORDER_KINDS = LAMBDA_KINDS | COUPLING_KINDS


@dataclass(frozen=True)
class ModelSpec:
    """
    One of the six analytic models plus its fixed parameter.

    Attributes:
        kind: Which model
        chi: epsilon/W for the lambda-disorder kinds (defaults to 0), None otherwise
    """

    kind: ModelKind
    chi: Optional[float] = None

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind in LAMBDA_KINDS:
            chi = 0.0 if self.chi is None else float(self.chi)
            if not math.isfinite(chi) or chi < 0.0:
                raise DomainError(f"chi must be finite and >= 0, got {self.chi!r}")
            object.__setattr__(self, "chi", chi)
        elif self.chi is not None:
            raise DomainError(f"chi only applies to lambda-disorder models, not {self.kind.value}")

    @property
    def sweep_variable(self) -> str:
        return self.kind.sweep_variable

    def __str__(self):
        if self.chi is None:
            return f"ModelSpec({self.kind.value})"
        return f"ModelSpec({self.kind.value}, chi={self.chi:g})"


@dataclass(frozen=True)
class BlochAverage:
    """
    Ensemble-averaged Bloch components of a 2x2 density matrix.

    Attributes:
        s: Averaged sin(phi)
        c: Averaged cos(phi)
        r: Radius sqrt(s^2 + c^2)
    """

    s: float
    c: float
    r: float

    @classmethod
    def from_components(cls, s: float, c: float) -> "BlochAverage":
        return cls(s, c, math.sqrt(s * s + c * c))


@dataclass(frozen=True)
class BlochState:
    """
    Bloch-sphere angles of the two eigenstates of a Landau-Zener model.

    Each eigenstate is written cos(theta/2)|0> + exp(i phi) sin(theta/2)|1>.
    pop1 and pop0 are the populations of |1> and |0> in the upper state |+>.
    """

    theta_plus: float
    theta_minus: float
    phi_plus: float
    phi_minus: float
    pop1: float
    pop0: float


def _require_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise NonFiniteError(f"{name} must be finite, got {value}")


def _require_positive(name: str, value: float) -> None:
    _require_finite(name, value)
    if value <= 0.0:
        raise DomainError(f"{name} must be > 0, got {value!r}")


def _require_non_negative(name: str, value: float) -> None:
    _require_finite(name, value)
    if value < 0.0:
        raise DomainError(f"{name} must be >= 0, got {value!r}")


# Landau-Zener coefficients


def lz_coeff_diag(x: float) -> float:
    """
    Unnormalized coefficient sqrt(1 + x^2) + x of |1> in the upper eigenstate
    of x sigma_z + sigma_x. The lower eigenstate carries its negative.
    """
    _require_finite("x", x)
    root = math.hypot(1.0, x)
    if x < 0.0:
        return 1.0 / (root - x)
    return root + x


def lz_coeff_offdiag(x: float) -> float:
    """
    Unnormalized coefficient (sqrt(1 + x^2) + 1)/x for sigma_z + x sigma_x.

    Raises:
        DomainError: At x = 0, where the eigenstate is a pure basis state
    """
    _require_finite("x", x)
    if x == 0.0:
        raise DomainError("lz_coeff_offdiag diverges at x = 0")
    return (math.hypot(1.0, x) + 1.0) / x


# Disorder averages


def bloch_binary_lambda(chi: float, tau: float) -> BlochAverage:
    """Levels lambda = +-W with equal weight."""
    _require_non_negative("chi", chi)
    _require_positive("tau", tau)
    lower = math.hypot(chi - 1.0, tau)
    upper = math.hypot(chi + 1.0, tau)
    c = 0.5 * ((chi - 1.0) / lower + (chi + 1.0) / upper)
    s = 0.5 * tau * (1.0 / lower + 1.0 / upper)
    return BlochAverage.from_components(s, c)


def bloch_binary_v(kappa: float) -> BlochAverage:
    """Coupling V = +-V0 with equal weight: s = 0, c = 1/sqrt(1 + kappa^2)."""
    _require_non_negative("kappa", kappa)
    c = 1.0 / math.hypot(1.0, kappa)
    return BlochAverage(0.0, c, c)


def bloch_box_lambda(chi: float, tau: float) -> BlochAverage:
    """
    Levels lambda uniform on [-W, W].

    s is the average of the non-negative 2V/Delta, so it is returned as
    (tau/2)[asinh((chi+1)/tau) - asinh((chi-1)/tau)], the magnitude of the
    logarithmic closed form. c = [sqrt((chi+1)^2 + tau^2) - sqrt((chi-1)^2 + tau^2)]/2
    is evaluated as 2 chi / (sum of the roots) to avoid cancellation.
    """
    _require_non_negative("chi", chi)
    _require_positive("tau", tau)
    lower = math.hypot(chi - 1.0, tau)
    upper = math.hypot(chi + 1.0, tau)
    c = 2.0 * chi / (lower + upper)
    s = 0.5 * tau * (math.asinh((chi + 1.0) / tau) - math.asinh((chi - 1.0) / tau))
    return BlochAverage.from_components(s, c)


def bloch_box_v(kappa: float) -> BlochAverage:
    """Coupling V uniform on [-V0, V0]: s = 0, c = asinh(kappa)/kappa."""
    _require_non_negative("kappa", kappa)
    if kappa < settings.SERIES_THRESHOLD:
        c = 1.0 - kappa * kappa / 6.0
    else:
        c = math.asinh(kappa) / kappa
    return BlochAverage(0.0, c, c)


def bloch_average(model: ModelSpec, v: float) -> BlochAverage:
    """
    Averaged Bloch components of a disorder model at sweep value v.

    Raises:
        UnsupportedModelError: For the Landau-Zener kinds, which are pure states
    """
    kind = model.kind
    if kind is ModelKind.BINARY_LAMBDA:
        return bloch_binary_lambda(model.chi, v)
    if kind is ModelKind.BOX_LAMBDA:
        return bloch_box_lambda(model.chi, v)
    if kind is ModelKind.BINARY_V:
        return bloch_binary_v(v)
    if kind is ModelKind.BOX_V:
        return bloch_box_v(v)
    raise UnsupportedModelError(f"{kind.value} is a pure-state model with no disorder average")


def _lz_coefficient(kind: ModelKind, x: float) -> Optional[float]:
    """Coefficient of a Landau-Zener model, or None at the off-diagonal x = 0 limit."""
    if kind is ModelKind.LZ_DIAGONAL:
        return lz_coeff_diag(x)
    if x == 0.0:
        return None
    return lz_coeff_offdiag(x)


def radius(model: ModelSpec, v: float) -> float:
    """
    Bloch radius of the state whose complexity ``model_complexity`` reports.

    For the Landau-Zener kinds this is |2 p - 1| with p the population of |1>,
    i.e. the radius of the dephased state.
    """
    if model.kind.is_lz:
        _require_finite("x", v)
        cval = _lz_coefficient(model.kind, v)
        if cval is None:
            return 1.0
        t = min(abs(cval), 1.0 / abs(cval))
        return (1.0 - t * t) / (1.0 + t * t)
    return bloch_average(model, v).r


def model_complexity(model: ModelSpec, v: float, normalized: bool = False) -> EntropyTriple:
    """
    Entropies of a model at sweep value v.

    Landau-Zener kinds go through ``complexity_from_coeff``; disorder kinds go
    through ``entropy_from_r`` of the averaged Bloch radius. The off-diagonal
    Landau-Zener model at x = 0 is a pure state and returns zeros.
    """
    if model.kind.is_lz:
        _require_finite("x", v)
        cval = _lz_coefficient(model.kind, v)
        if cval is None:
            return entropy_from_r(1.0, normalized)
        return complexity_from_coeff(cval, normalized)
    return entropy_from_r(bloch_average(model, v).r, normalized)


def chi_inverse_point(zeta: float, chi_inv: float) -> Tuple[float, float]:
    """
    Map a chi-inverse sweep point to (chi, tau).

    chi = 1/chi_inv and tau = zeta * chi_inv, i.e. zeta = tau * chi is held
    fixed along the sweep.
    """
    _require_positive("zeta", zeta)
    _require_positive("chi_inv", chi_inv)
    return 1.0 / chi_inv, zeta * chi_inv


def sweep_chi_inverse(kind: ModelKind, zeta: float, chi_inv: float, normalized: bool = False) -> EntropyTriple:
    """
    Entropies of a lambda-disorder model swept in chi^-1 = W/epsilon at fixed zeta.

    Raises:
        UnsupportedModelError: If kind is not BINARY_LAMBDA or BOX_LAMBDA
    """
    kind = ModelKind(kind)
    if kind not in LAMBDA_KINDS:
        raise UnsupportedModelError(f"chi-inverse sweeps apply to lambda-disorder models, not {kind.value}")
    chi, tau = chi_inverse_point(zeta, chi_inv)
    return model_complexity(ModelSpec(kind, chi=chi), tau, normalized)


def _bloch_angles(amp0: float, amp1: float) -> Tuple[float, float]:
    """(theta, phi) of the real state amp0|0> + amp1|1>, up to a global sign."""
    if amp0 < 0.0:
        amp0, amp1 = -amp0, -amp1
    theta = 2.0 * math.atan2(abs(amp1), amp0)
    phi = 0.0 if amp1 >= 0.0 else math.pi
    return theta, phi


def bloch_report(model: ModelSpec, v: float) -> BlochState:
    """
    Bloch-sphere representation of the eigenstates |+> = c|1> + |0> and
    |-> = |1> - c|0> of a Landau-Zener model.

    Raises:
        UnsupportedModelError: For disorder kinds, which have no single pure state
        DomainError: For the off-diagonal model at x = 0
    """
    if not model.kind.is_lz:
        raise UnsupportedModelError(f"bloch_report needs a Landau-Zener model, got {model.kind.value}")
    _require_finite("x", v)
    cval = lz_coeff_diag(v) if model.kind is ModelKind.LZ_DIAGONAL else lz_coeff_offdiag(v)

    amp1 = normalized_amplitude(cval)
    amp0 = 1.0 / math.hypot(1.0, cval)
    theta_plus, phi_plus = _bloch_angles(amp0, amp1)
    theta_minus, phi_minus = _bloch_angles(-amp1, amp0)

    pop1 = amp1 * amp1
    return BlochState(
        theta_plus=theta_plus,
        theta_minus=theta_minus,
        phi_plus=phi_plus,
        phi_minus=phi_minus,
        pop1=pop1,
        pop0=1.0 - pop1,
    )


# Raw-parameter conversions


def lambda_disorder_params(epsilon: float, v: float, w: float) -> Tuple[float, float]:
    """
    (chi, tau) = (|epsilon|/W, 2V/W) for level noise of half-width W.

    S_C only depends on c^2, so the sign of epsilon is dropped.
    """
    _require_finite("epsilon", epsilon)
    _require_positive("w", w)
    _require_positive("v", v)
    return abs(epsilon) / w, 2.0 * v / w


def coupling_disorder_param(epsilon: float, v0: float) -> float:
    """kappa = 2 V0 / |epsilon| for coupling noise of half-width V0."""
    _require_finite("epsilon", epsilon)
    _require_non_negative("v0", v0)
    if epsilon == 0.0:
        raise DomainError("epsilon must be non-zero for coupling disorder")
    return 2.0 * v0 / abs(epsilon)


def lz_sweep_coordinate(t: float, t0: float, ratio: float = 1.0) -> float:
    """
    Sweep coordinate x = ratio * t / T0 of a Landau-Zener problem.

    ratio is epsilon/V for the diagonal sweep and V/epsilon for the
    off-diagonal one.
    """
    _require_finite("t", t)
    _require_positive("t0", t0)
    _require_finite("ratio", ratio)
    return ratio * t / t0


# Maximum location


def default_bracket(kind: ModelKind) -> Bracket:
    lo, hi, log_scale = settings.DEFAULT_BRACKETS[ModelKind(kind).value]
    return Bracket(lo, hi, log_scale)


def find_model_maximum(
    model: ModelSpec, bracket: Optional[Bracket] = None, tol: float = settings.DEFAULT_TOL
) -> MaximumResult:
    """Locate the complexity maximum of a model along its sweep variable."""
    bracket = bracket or default_bracket(model.kind)
    result = maximize_scalar(lambda v: model_complexity(model, v).complexity, bracket, tol)
    logger.info("%s: maximum at %s = %.9g", model, model.sweep_variable, result.x_star)
    return result
