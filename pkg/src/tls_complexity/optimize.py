"""
Bracketed one-dimensional maximization and root finding.

Every maximum locator and the critical-radius computation in the package go
through ``maximize_scalar`` and ``find_root``. Brackets may be log-scaled,
in which case the search runs in exponent space.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, Iterator, Tuple

import numpy as np

from . import settings
from .exceptions import DomainError, NoSignChangeError, NonConvergenceError, NonFiniteError

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

ScalarFunction = Callable[[float], float]


@dataclass(frozen=True)
class Bracket:
    """
    Search interval for a sweep coordinate.

    Attributes:
        lo: Lower end of the interval
        hi: Upper end of the interval
        log_scale: Search in ln(x) instead of x; requires lo > 0
    """

    lo: float
    hi: float
    log_scale: bool = False

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise NonFiniteError(f"Bracket ends must be finite, got [{self.lo}, {self.hi}]")
        if not self.lo < self.hi:
            raise DomainError(f"Bracket requires lo < hi, got [{self.lo}, {self.hi}]")
        if self.log_scale and self.lo <= 0.0:
            raise DomainError(f"Log-scale bracket requires lo > 0, got {self.lo}")

    def to_internal(self, x: float) -> float:
        return math.log(x) if self.log_scale else x

    def from_internal(self, u: float) -> float:
        return math.exp(u) if self.log_scale else u

    def grid(self, points: int) -> np.ndarray:
        """Evenly spaced points, geometrically spaced when log-scaled."""
        if points < 2:
            raise DomainError(f"A grid needs at least 2 points, got {points}")
        if self.log_scale:
            return np.geomspace(self.lo, self.hi, points)
        return np.linspace(self.lo, self.hi, points)


@dataclass(frozen=True)
class MaximumResult:
    """
    Outcome of a bracketed maximization.

    Attributes:
        x_star: Location of the maximum
        f_star: Function value at x_star
        at_boundary: True when x_star sits within tol of a bracket end
        evaluations: Number of function evaluations used
    """

    x_star: float
    f_star: float
    at_boundary: bool
    evaluations: int

    def __iter__(self) -> Iterator[float]:
        yield self.x_star
        yield self.f_star


def _evaluate(f: ScalarFunction, x: float) -> float:
    value = float(f(x))
    if not math.isfinite(value):
        raise NonFiniteError(f"Objective returned {value} at x = {x!r}")
    return value


def _golden_section(f: ScalarFunction, b: Bracket, u_lo: float, u_hi: float, tol: float) -> Tuple[float, float, int]:
    """Golden-section maximization of f over [u_lo, u_hi] in internal coordinates."""
    evaluations = 0

    def g(u: float) -> float:
        nonlocal evaluations
        evaluations += 1
        return _evaluate(f, b.from_internal(u))

    dist = u_hi - u_lo
    uc = u_lo + INV_PHI_SQ * dist
    ud = u_lo + INV_PHI * dist
    fc, fd = g(uc), g(ud)

    for _ in range(settings.ROOT_MAX_ITERATIONS * 2):
        if b.from_internal(u_hi) - b.from_internal(u_lo) < tol:
            break
        if fc > fd:
            u_hi, ud, fd = ud, uc, fc
            dist = u_hi - u_lo
            uc = u_lo + INV_PHI_SQ * dist
            fc = g(uc)
        else:
            u_lo, uc, fc = uc, ud, fd
            dist = u_hi - u_lo
            ud = u_lo + INV_PHI * dist
            fd = g(ud)
    else:
        raise NonConvergenceError(f"Golden-section search did not reach tol={tol} within the iteration cap")

    if fc > fd:
        return b.from_internal(uc), fc, evaluations
    return b.from_internal(ud), fd, evaluations


def maximize_scalar(
    f: ScalarFunction,
    b: Bracket,
    tol: float = settings.DEFAULT_TOL,
    grid_points: int = settings.GRID_SCAN_POINTS,
) -> MaximumResult:
    """
    Locate the maximum of f on a bracket.

    A grid scan picks the best grid point; golden-section search then refines
    inside the neighbouring grid cells. Secondary maxima are reached by
    passing a narrower bracket.

    Args:
        f: Objective, finite on [lo, hi]
        b: Search bracket
        tol: Absolute tolerance on x_star in sweep coordinates
        grid_points: Size of the initial grid scan

    Returns:
        MaximumResult; at_boundary is set instead of raising when the best
        point is a bracket end

    Raises:
        DomainError: If tol is not positive
        NonFiniteError: If f evaluates to NaN or infinity
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")

    grid = b.grid(grid_points)
    values = np.array([_evaluate(f, float(x)) for x in grid])
    best = int(np.argmax(values))

    u_lo = b.to_internal(float(grid[max(best - 1, 0)]))
    u_hi = b.to_internal(float(grid[min(best + 1, grid_points - 1)]))
    x_star, f_star, evaluations = _golden_section(f, b, u_lo, u_hi, tol)

    # The golden-section candidate can lose to the grid point on a plateau
    if values[best] > f_star:
        x_star, f_star = float(grid[best]), float(values[best])

    at_boundary = (x_star - b.lo) <= tol or (b.hi - x_star) <= tol
    logger.debug(
        "maximum on [%g, %g] (log=%s): x*=%.12g f*=%.12g boundary=%s",
        b.lo,
        b.hi,
        b.log_scale,
        x_star,
        f_star,
        at_boundary,
    )
    return MaximumResult(x_star, f_star, at_boundary, grid_points + evaluations)


def bisection_steps(g: ScalarFunction, b: Bracket, tol: float = settings.DEFAULT_TOL) -> Iterator[Tuple[float, float]]:
    """
    Yield the successive bisection intervals (lo, hi) for a root of g.

    Bisection always works in linear coordinates, regardless of
    ``b.log_scale``. The first interval yielded is the bracket itself; each
    later one is exactly half as wide.

    Raises:
        NoSignChangeError: If g(lo) and g(hi) have the same sign
    """
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol}")

    lo, hi = b.lo, b.hi
    g_lo, g_hi = _evaluate(g, lo), _evaluate(g, hi)
    if g_lo * g_hi > 0.0:
        raise NoSignChangeError(f"No sign change on [{lo}, {hi}]: g(lo)={g_lo:.6g}, g(hi)={g_hi:.6g}")

    yield lo, hi
    if g_lo == 0.0:
        yield lo, lo
        return
    if g_hi == 0.0:
        yield hi, hi
        return

    iterations = max(0, math.ceil(math.log2((hi - lo) / tol)))
    for _ in range(iterations):
        mid = 0.5 * (lo + hi)
        g_mid = _evaluate(g, mid)
        if g_mid == 0.0:
            yield mid, mid
            return
        if (g_mid < 0.0) == (g_lo < 0.0):
            lo, g_lo = mid, g_mid
        else:
            hi = mid
        yield lo, hi


def find_root(g: ScalarFunction, b: Bracket, tol: float = settings.DEFAULT_TOL) -> float:
    """
    Find a root of g on a bracket with a sign change by bisection.

    Converges in ceil(log2((hi - lo) / tol)) halvings.

    Returns:
        Midpoint of the final interval

    Raises:
        NoSignChangeError: If g(lo) * g(hi) > 0
    """
    lo, hi = b.lo, b.hi
    for lo, hi in bisection_steps(g, b, tol):
        pass
    return 0.5 * (lo + hi)
