"""
Complexity of thermal two-level ensembles.

Two systems are covered, both in reduced variables:

- a paramagnet of half-spins in a field, x = mu_B B / (k_B T), where the
  occupation is p = exp(x) / (2 cosh x);
- the mean-field Ising ferromagnet, x = T / T_c and alpha = mu_B B / (z J),
  where the magnetization solves the Curie-Weiss equation
  m = tanh((m + alpha) / x) and the occupation is p = (1 + m) / 2.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional

import numpy as np
from scipy import constants
from scipy.special import expit

from . import settings
from .entropy import EntropyTriple, complexity_from_p, entropy_from_r
from .exceptions import BoundaryMaximumError, DomainError, NonConvergenceError, NonFiniteError
from .optimize import Bracket, MaximumResult, bisection_steps, maximize_scalar

logger = logging.getLogger(__name__)

BOHR_MAGNETON = constants.physical_constants["Bohr magneton"][0]
BOLTZMANN = constants.k


@dataclass(frozen=True)
class ParamagnetPoint:
    """
    Reduced field strength x = beta * epsilon = mu_B B / (k_B T).

    A negative field gives the same complexity as its magnitude, so x is
    stored as |x|.
    """

    x: float

    def __post_init__(self):
        if not math.isfinite(self.x):
            raise NonFiniteError(f"x must be finite, got {self.x}")
        object.__setattr__(self, "x", abs(float(self.x)))


@dataclass(frozen=True)
class IsingPoint:
    """
    Reduced temperature x = T / T_c and field ratio alpha = epsilon_B / (z J).
    """

    x: float
    alpha: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.alpha)):
            raise NonFiniteError(f"x and alpha must be finite, got x={self.x}, alpha={self.alpha}")
        if self.x <= 0.0:
            raise DomainError(f"x = T/T_c must be > 0, got {self.x!r}")
        if self.alpha < 0.0:
            raise DomainError(f"alpha must be >= 0, got {self.alpha!r}")


class Branch(str, Enum):
    ZERO = "zero"
    POSITIVE = "positive"


@dataclass(frozen=True)
class MagnetizationSolution:
    """
    A root of the Curie-Weiss equation.

    Attributes:
        m: Magnetization per spin
        branch: ZERO for the paramagnetic m = 0 solution, POSITIVE otherwise
        residual: m - tanh((m + alpha) / x)
        iterations: Bisection steps taken
    """

    m: float
    branch: Branch
    residual: float
    iterations: int


# Paramagnet


def paramagnet_complexity(pt: ParamagnetPoint, normalized: bool = False) -> EntropyTriple:
    """Entropies of the occupation p = exp(x)/(2 cosh x) = 1/(1 + exp(-2x))."""
    return complexity_from_p(float(expit(2.0 * pt.x)), normalized)


def find_paramagnet_maximum(bracket: Optional[Bracket] = None, tol: float = settings.DEFAULT_TOL) -> MaximumResult:
    """Locate the paramagnet complexity maximum; it sits where tanh(x) = r*."""
    bracket = bracket or Bracket(*settings.DEFAULT_BRACKETS["paramagnet"])
    return maximize_scalar(lambda x: paramagnet_complexity(ParamagnetPoint(x)).complexity, bracket, tol)


def paramagnet_point_from_raw(
    b: float, t: float, mu_b: float = BOHR_MAGNETON, k_b: float = BOLTZMANN
) -> ParamagnetPoint:
    """
    ParamagnetPoint for a field B (tesla) at temperature T (kelvin).

    Raises:
        DomainError: If T <= 0
    """
    if not t > 0.0:
        raise DomainError(f"temperature must be > 0, got {t!r}")
    return ParamagnetPoint(mu_b * b / (k_b * t))


# Mean-field Ising


def curie_weiss_solve(pt: IsingPoint) -> MagnetizationSolution:
    """
    Stable, field-aligned root of m = tanh((m + alpha) / x).

    For alpha = 0 and x >= 1 the only solution is m = 0. Otherwise the largest
    root is bracketed in [max(tanh(alpha/x), 1e-16), 1], where g(m) = m - tanh((m + alpha)/x)
    is convex with a single sign change, and found by bisection.

    Raises:
        NonConvergenceError: If the iteration cap is hit or the residual
            exceeds 1e-12
    """
    x, alpha = pt.x, pt.alpha
    if alpha == 0.0 and x >= 1.0:
        return MagnetizationSolution(0.0, Branch.ZERO, 0.0, 0)

    def g(m: float) -> float:
        return m - math.tanh((m + alpha) / x)

    lo = max(math.tanh(alpha / x), settings.CW_LOWER_FLOOR)
    if lo >= 1.0 or g(lo) >= 0.0:
        # tanh saturated or the root sits on the floor
        m = min(lo, 1.0)
        return MagnetizationSolution(m, Branch.POSITIVE, g(m), 0)

    iterations = -1
    left, right = lo, 1.0
    for left, right in bisection_steps(g, Bracket(lo, 1.0), tol=4.0 * math.ulp(1.0)):
        iterations += 1
        if iterations > settings.CW_MAX_ITERATIONS:
            raise NonConvergenceError(f"Curie-Weiss bisection exceeded {settings.CW_MAX_ITERATIONS} steps at {pt}")

    m = 0.5 * (left + right)
    residual = g(m)
    if abs(residual) >= settings.CW_RESIDUAL_TOL:
        raise NonConvergenceError(f"Curie-Weiss residual {residual:.3g} too large at {pt}")
    logger.debug("curie-weiss x=%g alpha=%g: m=%.15g after %d steps", x, alpha, m, iterations)
    return MagnetizationSolution(m, Branch.POSITIVE, residual, iterations)


def ising_complexity(pt: IsingPoint, normalized: bool = False) -> EntropyTriple:
    """Entropies of the occupation p = (1 + m)/2 on the stable Curie-Weiss branch."""
    solution = curie_weiss_solve(pt)
    if solution.branch is Branch.ZERO:
        return entropy_from_r(0.0, normalized)
    return complexity_from_p(0.5 * (1.0 + solution.m), normalized)


def find_t_star(alpha: float, bracket: Optional[Bracket] = None, tol: float = settings.DEFAULT_TOL) -> float:
    """
    Reduced temperature T*/T_c of maximal complexity at field ratio alpha.

    Raises:
        BoundaryMaximumError: If the maximum lands on an edge of the bracket
    """
    bracket = bracket or Bracket(*settings.T_STAR_BRACKET)
    result = maximize_scalar(lambda x: ising_complexity(IsingPoint(x, alpha)).complexity, bracket, tol)
    if result.at_boundary:
        raise BoundaryMaximumError(
            f"T*/T_c for alpha={alpha} hit the bracket edge [{bracket.lo}, {bracket.hi}]", result.x_star
        )
    logger.info("alpha=%g: T*/T_c = %.9g", alpha, result.x_star)
    return result.x_star


@dataclass(frozen=True)
class LinearFit:
    """
    Least-squares line T*/T_c = intercept + slope * alpha.

    Attributes:
        slope, intercept: Line coefficients
        max_relative_residual: Largest |residual| divided by the range of T*
    """

    slope: float
    intercept: float
    max_relative_residual: float


def t_star_linear_fit(alphas: Iterable[float]) -> LinearFit:
    """Fit a line through T*(alpha) over the given field ratios."""
    alphas = np.asarray(list(alphas), dtype=float)
    if alphas.size < 2:
        raise DomainError("a linear fit needs at least two alpha values")
    t_stars = np.array([find_t_star(float(a)) for a in alphas])
    slope, intercept = np.polyfit(alphas, t_stars, 1)
    residuals = t_stars - (intercept + slope * alphas)
    spread = float(np.ptp(t_stars))
    relative = float(np.max(np.abs(residuals)) / spread) if spread > 0.0 else 0.0
    return LinearFit(float(slope), float(intercept), relative)


def ising_point_from_raw(
    t: float, b: float, j: float, z: int, mu_b: float = BOHR_MAGNETON, k_b: float = BOLTZMANN
) -> IsingPoint:
    """
    IsingPoint for temperature T, field B, coupling J and coordination z.

    Uses epsilon_B = mu_B B as in the Curie-Weiss equation, so x = k_B T / (z J)
    and alpha = mu_B |B| / (z J). Pass ``mu_b = g * BOHR_MAGNETON / 2`` to use
    the Hamiltonian's moment mu = g mu_B / 2 instead.
    """
    if not (j > 0.0 and z > 0):
        raise DomainError(f"J and z must be positive, got J={j!r}, z={z!r}")
    if not t > 0.0:
        raise DomainError(f"temperature must be > 0, got {t!r}")
    zj = z * j
    return IsingPoint(k_b * t / zj, mu_b * abs(b) / zj)
