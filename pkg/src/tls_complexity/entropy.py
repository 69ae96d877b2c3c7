"""
Entropies and entropic complexity of a two-level density matrix.

A 2x2 density matrix with Bloch radius r has eigenvalues (1 + r)/2 and
(1 - r)/2. Everything here is a function of that eigenvalue pair: the
Shannon entropy S, the order-2 Renyi entropy R2 = -ln Tr rho^2 and the
complexity S_C = S - R2. Values are in nats unless ``normalized`` is set,
in which case all three are divided by ln 2.
"""

import logging
import math
import threading
from dataclasses import asdict, dataclass
from typing import Any, Dict, Optional, Tuple

import numpy as np
from scipy.special import entr

from . import settings
from .exceptions import DomainError, NonFiniteError
from .optimize import Bracket, find_root

logger = logging.getLogger(__name__)

LN2 = math.log(2.0)


@dataclass(frozen=True)
class EntropyTriple:
    """
    Shannon entropy, Renyi-2 entropy and their difference.

    Attributes:
        shannon: S = -Tr rho ln rho
        renyi2: R2 = -ln Tr rho^2
        complexity: S - R2
        normalized: True when all three are expressed in units of ln 2
    """

    shannon: float
    renyi2: float
    complexity: float
    normalized: bool = False

    def normalize(self) -> "EntropyTriple":
        """Return the same triple in units of ln 2."""
        if self.normalized:
            return self
        return EntropyTriple(self.shannon / LN2, self.renyi2 / LN2, self.complexity / LN2, normalized=True)

    def as_dict(self) -> Dict[str, Any]:
        return asdict(self)


_PURE = EntropyTriple(0.0, 0.0, 0.0)
_MIXED = EntropyTriple(LN2, LN2, 0.0)


# Coefficients of r^2, r^4, ... in S_C(r) and in 2 (ln 2 - S(r))
_SC_SERIES = (1.0 / 2.0, -7.0 / 12.0, 3.0 / 10.0, -15.0 / 56.0)
_SHANNON_SERIES = (1.0, 1.0 / 6.0, 1.0 / 15.0, 1.0 / 28.0)


def _near_mixed(r: float) -> EntropyTriple:
    """Entropies for small r from their power series, free of cancellation."""
    r2 = r * r
    shannon_gap = sum(coeff * r2 ** (k + 1) for k, coeff in enumerate(_SHANNON_SERIES))
    complexity = sum(coeff * r2 ** (k + 1) for k, coeff in enumerate(_SC_SERIES))
    return EntropyTriple(LN2 - 0.5 * shannon_gap, LN2 - math.log1p(r2), complexity)


def _triple_from_pair(p: float, q: float, normalized: bool, r: Optional[float] = None) -> EntropyTriple:
    """Entropies of the distribution (p, q) with p + q = 1 and radius r = |p - q|."""
    if p == q:
        return _MIXED.normalize() if normalized else _MIXED
    r = abs(p - q) if r is None else r
    if r < settings.ENTROPY_SERIES_RADIUS:
        triple = _near_mixed(r)
    else:
        shannon = float(entr(p) + entr(q))
        # p^2 + q^2 = 1 - 2pq keeps full precision near the pure state
        renyi2 = -math.log1p(-2.0 * p * q)
        triple = EntropyTriple(shannon, renyi2, max(shannon - renyi2, 0.0))
    return triple.normalize() if normalized else triple


def _check_finite(name: str, value: float) -> None:
    if not math.isfinite(value):
        raise NonFiniteError(f"{name} must be finite, got {value}")


def clamp_radius(r: float) -> float:
    """
    Validate a Bloch radius and clamp rounding overshoot above 1.

    Raises:
        DomainError: If r < 0 or r > 1 + R_CLAMP_BAND
    """
    _check_finite("r", r)
    if r < 0.0 or r > 1.0 + settings.R_CLAMP_BAND:
        raise DomainError(f"r must lie in [0, 1], got {r!r}")
    return min(r, 1.0)


def eigenvalues_from_r(r: float) -> Tuple[float, float]:
    """Eigenvalues ((1 + r)/2, (1 - r)/2) of the averaged density matrix."""
    r = clamp_radius(r)
    return 0.5 * (1.0 + r), 0.5 * (1.0 - r)


def entropy_from_r(r: float, normalized: bool = False) -> EntropyTriple:
    """
    Entropies of a two-level density matrix with Bloch radius r.

    Args:
        r: Bloch radius in [0, 1]; values up to 1 + 1e-9 are clamped to 1
        normalized: Divide all three entropies by ln 2

    Returns:
        EntropyTriple with S, R2 and S_C = S - R2

    Raises:
        DomainError: If r lies outside [0, 1 + 1e-9]
        NonFiniteError: If r is NaN or infinite
    """
    r = clamp_radius(r)
    if r == 1.0:
        return _PURE.normalize() if normalized else _PURE
    if r == 0.0:
        return _MIXED.normalize() if normalized else _MIXED

    if r < settings.ENTROPY_SERIES_RADIUS:
        triple = _near_mixed(r)
    else:
        hi, lo = 0.5 * (1.0 + r), 0.5 * (1.0 - r)
        shannon = float(entr(hi) + entr(lo))
        renyi2 = LN2 - math.log1p(r * r)
        triple = EntropyTriple(shannon, renyi2, max(shannon - renyi2, 0.0))
    return triple.normalize() if normalized else triple


def complexity_from_p(p: float, normalized: bool = False) -> EntropyTriple:
    """
    Entropies of the two-state distribution (p, 1 - p).

    Used for thermal occupations, where 0 ln 0 is taken as 0.

    Raises:
        DomainError: If p lies outside [0, 1]
    """
    _check_finite("p", p)
    if p < 0.0 or p > 1.0:
        raise DomainError(f"p must lie in [0, 1], got {p!r}")
    if p in (0.0, 1.0):
        return _PURE.normalize() if normalized else _PURE
    return _triple_from_pair(p, 1.0 - p, normalized)


def complexity_from_coeff(cval: float, normalized: bool = False) -> EntropyTriple:
    """
    Entropies of the normalized state c|1> + |0>, given the unnormalized coefficient c.

    Equivalent to S_C = -c^2/(1+c^2) ln c^2 + ln((1+c^4)/(1+c^2)). The
    populations are computed from t = min(|c|, 1/|c|) so that huge or tiny
    coefficients neither overflow nor cancel.

    Raises:
        NonFiniteError: If cval is NaN or infinite
    """
    _check_finite("cval", cval)
    a = abs(cval)
    if a == 0.0:
        return _PURE.normalize() if normalized else _PURE
    t = a if a <= 1.0 else 1.0 / a
    t2 = t * t
    small = t2 / (1.0 + t2)
    large = 1.0 / (1.0 + t2)
    return _triple_from_pair(small, large, normalized, r=(1.0 - t2) / (1.0 + t2))


def normalized_amplitude(cval: float) -> float:
    """Amplitude c / sqrt(1 + c^2) of |1> after normalizing c|1> + |0>."""
    _check_finite("cval", cval)
    return cval / math.hypot(1.0, cval)


def density_matrix(s: float, c: float, sign: int = 1) -> np.ndarray:
    """
    Averaged density matrix (1 + sign * (s sigma_x + c sigma_z)) / 2.

    Args:
        s: Averaged sin(phi)
        c: Averaged cos(phi)
        sign: +1 for the upper eigenstate, -1 for the lower one
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign!r}")
    sigma_x = np.array([[0.0, 1.0], [1.0, 0.0]])
    sigma_z = np.array([[1.0, 0.0], [0.0, -1.0]])
    return 0.5 * (np.eye(2) + sign * (s * sigma_x + c * sigma_z))


def _stationarity(r: float) -> float:
    return math.atanh(r) - 2.0 * r / (1.0 + r * r)


_critical_r: Optional[float] = None
_critical_r_lock = threading.Lock()


def critical_r() -> float:
    """
    Bloch radius r* at which S_C(r) is maximal.

    r* is the root of atanh(r) = 2r/(1 + r^2) in (0, 1), about 0.7433. It is
    computed once by bisection and cached.
    """
    global _critical_r
    if _critical_r is None:
        with _critical_r_lock:
            if _critical_r is None:
                value = find_root(_stationarity, Bracket(0.5, 0.9), tol=settings.CRITICAL_R_TOL)
                logger.debug("critical radius r* = %.17g", value)
                _critical_r = value
    return _critical_r
