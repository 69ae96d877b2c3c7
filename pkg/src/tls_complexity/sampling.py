"""
Monte Carlo disorder averaging of the two-level density matrix.

Draws the random level shift lambda or coupling V, rotates each draw into its
eigenbasis and averages sin(phi) and cos(phi). The estimates are an
independent check on the closed forms in ``models``.

Samples are split into fixed-size blocks. Block i draws from its own
``SeedSequence(seed, spawn_key=(i,))`` stream and the block moments are
merged in block order, so results depend only on (seed, n_samples, disorder)
and never on how many workers processed the blocks.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np
from tqdm import tqdm

from . import settings
from .entropy import density_matrix, entropy_from_r
from .exceptions import DomainError, NonFiniteError, UnsupportedModelError
from .models import (
    DISORDER_KINDS,
    LAMBDA_KINDS,
    BlochAverage,
    ModelKind,
    ModelSpec,
    bloch_average,
    coupling_disorder_param,
    lambda_disorder_params,
)

logger = logging.getLogger(__name__)

BINARY_KINDS = frozenset({ModelKind.BINARY_LAMBDA, ModelKind.BINARY_V})
MAX_SEED = 2**64


@dataclass(frozen=True)
class SampleConfig:
    """
    A disorder ensemble in raw energy parameters plus sampling controls.

    Attributes:
        kind: One of the four disorder kinds
        epsilon: Level offset (>= 0 for level noise, > 0 for coupling noise)
        w: Half-width of the level noise; level-noise kinds only
        v: Fixed coupling; level-noise kinds only
        v0: Half-width of the coupling noise; coupling-noise kinds only
        n_samples: Number of draws
        seed: Unsigned 64-bit seed
    """

    kind: ModelKind
    epsilon: float
    w: Optional[float] = None
    v: Optional[float] = None
    v0: Optional[float] = None
    n_samples: int = 100_000
    seed: int = settings.MC_DEFAULT_SEED

    def __post_init__(self):
        object.__setattr__(self, "kind", ModelKind(self.kind))
        if self.kind not in DISORDER_KINDS:
            raise UnsupportedModelError(f"{self.kind.value} has no disorder to sample")
        if not isinstance(self.n_samples, (int, np.integer)) or self.n_samples < 1:
            raise DomainError(f"n_samples must be an integer >= 1, got {self.n_samples!r}")
        if not isinstance(self.seed, (int, np.integer)) or not 0 <= self.seed < MAX_SEED:
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed!r}")
        if not math.isfinite(self.epsilon):
            raise NonFiniteError(f"epsilon must be finite, got {self.epsilon}")

        if self.kind in LAMBDA_KINDS:
            self._require_positive("w", self.w)
            self._require_positive("v", self.v)
            if self.epsilon < 0.0:
                raise DomainError(f"epsilon must be >= 0 for level noise, got {self.epsilon}")
            if self.v0 is not None:
                raise DomainError("v0 only applies to coupling noise")
        else:
            self._require_positive("v0", self.v0)
            if self.epsilon <= 0.0:
                raise DomainError(f"epsilon must be > 0 for coupling noise, got {self.epsilon}")
            if self.w is not None or self.v is not None:
                raise DomainError("w and v only apply to level noise")

    @staticmethod
    def _require_positive(name: str, value: Optional[float]) -> None:
        if value is None or not math.isfinite(value) or value <= 0.0:
            raise DomainError(f"{name} must be finite and > 0, got {value!r}")

    @classmethod
    def from_model(cls, model: ModelSpec, v: float, n_samples: int, seed: int) -> "SampleConfig":
        """
        Raw parameters realizing a dimensionless model point.

        Level noise uses W = 1, epsilon = chi, V = tau/2; coupling noise uses
        epsilon = 1, V0 = kappa/2.
        """
        if model.kind in LAMBDA_KINDS:
            return cls(model.kind, epsilon=model.chi, w=1.0, v=0.5 * v, n_samples=n_samples, seed=seed)
        return cls(model.kind, epsilon=1.0, v0=0.5 * v, n_samples=n_samples, seed=seed)

    def to_model(self) -> Tuple[ModelSpec, float]:
        """The dimensionless model and sweep value this ensemble corresponds to."""
        if self.kind in LAMBDA_KINDS:
            chi, tau = lambda_disorder_params(self.epsilon, self.v, self.w)
            return ModelSpec(self.kind, chi=chi), tau
        return ModelSpec(self.kind), coupling_disorder_param(self.epsilon, self.v0)

    @property
    def is_binary(self) -> bool:
        return self.kind in BINARY_KINDS


@dataclass(frozen=True)
class BlockMoments:
    """Count, means and centred second moments of sin(phi) and cos(phi)."""

    n: int = 0
    mean_s: float = 0.0
    mean_c: float = 0.0
    m2_s: float = 0.0
    m2_c: float = 0.0
    m2_sc: float = 0.0

    @classmethod
    def from_arrays(cls, sin_phi: np.ndarray, cos_phi: np.ndarray) -> "BlockMoments":
        mean_s = float(sin_phi.mean())
        mean_c = float(cos_phi.mean())
        ds = sin_phi - mean_s
        dc = cos_phi - mean_c
        return cls(
            n=int(sin_phi.size),
            mean_s=mean_s,
            mean_c=mean_c,
            m2_s=float(np.dot(ds, ds)),
            m2_c=float(np.dot(dc, dc)),
            m2_sc=float(np.dot(ds, dc)),
        )

    def merge(self, other: "BlockMoments") -> "BlockMoments":
        """Pairwise combination of two sets of moments."""
        if self.n == 0:
            return other
        if other.n == 0:
            return self
        n = self.n + other.n
        delta_s = other.mean_s - self.mean_s
        delta_c = other.mean_c - self.mean_c
        weight = self.n * other.n / n
        return BlockMoments(
            n=n,
            mean_s=self.mean_s + delta_s * other.n / n,
            mean_c=self.mean_c + delta_c * other.n / n,
            m2_s=self.m2_s + other.m2_s + delta_s * delta_s * weight,
            m2_c=self.m2_c + other.m2_c + delta_c * delta_c * weight,
            m2_sc=self.m2_sc + other.m2_sc + delta_s * delta_c * weight,
        )


@dataclass(frozen=True)
class McEstimate:
    """
    Monte Carlo (or exhaustive) estimate of the averaged Bloch components.

    Attributes:
        s_hat, c_hat: Averaged sin(phi) and cos(phi)
        r_hat: sqrt(s_hat^2 + c_hat^2)
        sc_hat: Complexity at r_hat, in nats
        se_s, se_c: Standard errors of s_hat and c_hat
        n: Number of draws, or support points for the exhaustive average
        se_sc: Delta-method standard error of sc_hat
        exhaustive: True when computed from the exact two-point average
        rng_algorithm: Generator used for the draws
    """

    s_hat: float
    c_hat: float
    r_hat: float
    sc_hat: float
    se_s: float
    se_c: float
    n: int
    se_sc: float = 0.0
    exhaustive: bool = False
    rng_algorithm: str = settings.RNG_ALGORITHM

    def density_matrix(self, sign: int = 1) -> np.ndarray:
        return density_matrix(self.s_hat, self.c_hat, sign)


def _rotation(epsilon: float, lam: np.ndarray, coupling: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """sin(phi) = 2V/Delta and cos(phi) = (epsilon - lambda)/Delta per draw."""
    detuning = epsilon - lam
    delta = np.hypot(detuning, 2.0 * coupling)
    return 2.0 * coupling / delta, detuning / delta


def _draw_block(config: SampleConfig, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
    kind = config.kind
    if kind is ModelKind.BINARY_LAMBDA:
        lam = config.w * (2.0 * rng.integers(0, 2, size=size) - 1.0)
        return _rotation(config.epsilon, lam, np.full(size, config.v))
    if kind is ModelKind.BOX_LAMBDA:
        lam = rng.uniform(-config.w, config.w, size=size)
        return _rotation(config.epsilon, lam, np.full(size, config.v))
    if kind is ModelKind.BINARY_V:
        coupling = config.v0 * (2.0 * rng.integers(0, 2, size=size) - 1.0)
    else:
        coupling = rng.uniform(-config.v0, config.v0, size=size)
    return _rotation(config.epsilon, np.zeros(size), coupling)


def _block_sizes(n_samples: int, block_size: int) -> Iterable[int]:
    full, rest = divmod(n_samples, block_size)
    return [block_size] * full + ([rest] if rest else [])


def _sample_block(config: SampleConfig, index: int, size: int) -> BlockMoments:
    stream = np.random.SeedSequence(config.seed, spawn_key=(index,))
    rng = np.random.Generator(np.random.PCG64(stream))
    return BlockMoments.from_arrays(*_draw_block(config, rng, size))


def _estimate(s: float, c: float, n: int, var_s: float, var_c: float, cov_sc: float, **kwargs) -> McEstimate:
    r = math.sqrt(s * s + c * c)
    se_s = math.sqrt(var_s / n)
    se_c = math.sqrt(var_c / n)
    sc = entropy_from_r(r).complexity

    se_sc = 0.0
    if 0.0 < r < 1.0:
        # dS_C/dr = 2r/(1 + r^2) - atanh(r), dr/ds = s/r, dr/dc = c/r
        slope = 2.0 * r / (1.0 + r * r) - math.atanh(r)
        var_r = ((s * s) * var_s + (c * c) * var_c + 2.0 * s * c * cov_sc) / (r * r * n)
        se_sc = abs(slope) * math.sqrt(max(var_r, 0.0))
    return McEstimate(s, c, r, sc, se_s, se_c, n, se_sc=se_sc, **kwargs)


def sample_bloch(
    config: SampleConfig,
    workers: int = 1,
    block_size: int = settings.MC_BLOCK_SIZE,
    progress: bool = False,
) -> McEstimate:
    """
    Monte Carlo average of sin(phi) and cos(phi) over a disorder ensemble.

    Args:
        config: Ensemble and sampling controls
        workers: Number of threads drawing blocks; does not affect the result
        block_size: Draws per substream block
        progress: Show a tqdm progress bar on stderr

    Returns:
        McEstimate with sample-variance standard errors
    """
    if workers < 1:
        raise DomainError(f"workers must be >= 1, got {workers}")
    if block_size < 1:
        raise DomainError(f"block_size must be >= 1, got {block_size}")

    sizes = list(_block_sizes(config.n_samples, block_size))
    logger.debug("sampling %s: %d blocks on %d worker(s)", config.kind.value, len(sizes), workers)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        blocks = pool.map(lambda item: _sample_block(config, *item), enumerate(sizes))
        moments = BlockMoments()
        for block in tqdm(blocks, total=len(sizes), desc="Sampling", disable=not progress):
            moments = moments.merge(block)

    n = moments.n
    if n > 1:
        var_s, var_c, cov_sc = (m / (n - 1) for m in (moments.m2_s, moments.m2_c, moments.m2_sc))
    else:
        logger.warning("a single draw has no sample variance; standard errors set to 0")
        var_s = var_c = cov_sc = 0.0
    return _estimate(moments.mean_s, moments.mean_c, n, var_s, var_c, cov_sc)


def exhaustive_binary(config: SampleConfig) -> McEstimate:
    """
    Exact average over the two-point measure of a binary ensemble.

    Raises:
        UnsupportedModelError: For box ensembles
    """
    if not config.is_binary:
        raise UnsupportedModelError(f"exhaustive averaging needs a binary ensemble, got {config.kind.value}")
    if config.kind is ModelKind.BINARY_LAMBDA:
        lam = np.array([config.w, -config.w])
        sin_phi, cos_phi = _rotation(config.epsilon, lam, np.full(2, config.v))
    else:
        sin_phi, cos_phi = _rotation(config.epsilon, np.zeros(2), np.array([config.v0, -config.v0]))
    s = 0.5 * (float(sin_phi[0]) + float(sin_phi[1]))
    c = 0.5 * (float(cos_phi[0]) + float(cos_phi[1]))
    return _estimate(s, c, 2, 0.0, 0.0, 0.0, exhaustive=True, rng_algorithm="none")


@dataclass(frozen=True)
class DeviationReport:
    """
    Estimate against closed form.

    z_s and z_c are (estimate - closed form)/se. A zero standard error (the
    exhaustive path, or a constant integrand) gives z = 0 when the deviation is
    at rounding level and +-inf otherwise.
    """

    z_s: float
    z_c: float
    sc_abs_dev: float
    estimate: McEstimate
    closed_form: BlochAverage
    sc_closed_form: float
    threshold: float = settings.MC_Z_FAIL

    @property
    def passed(self) -> bool:
        return abs(self.z_s) <= self.threshold and abs(self.z_c) <= self.threshold


ZERO_SE_ATOL = 1e-12


def _z_score(estimate: float, exact: float, se: float) -> float:
    deviation = estimate - exact
    if se > 0.0:
        return deviation / se
    if abs(deviation) <= ZERO_SE_ATOL:
        return 0.0
    return math.copysign(math.inf, deviation)


def compare(
    config: SampleConfig,
    workers: int = 1,
    exhaustive: Optional[bool] = None,
    progress: bool = False,
) -> DeviationReport:
    """
    Compare an ensemble estimate with the closed form of its model.

    Binary ensembles use the exhaustive average unless ``exhaustive=False``.
    """
    model, v = config.to_model()
    closed = bloch_average(model, v)
    sc_closed = entropy_from_r(closed.r).complexity

    use_exhaustive = config.is_binary if exhaustive is None else exhaustive
    if use_exhaustive:
        estimate = exhaustive_binary(config)
    else:
        estimate = sample_bloch(config, workers=workers, progress=progress)

    report = DeviationReport(
        z_s=_z_score(estimate.s_hat, closed.s, estimate.se_s),
        z_c=_z_score(estimate.c_hat, closed.c, estimate.se_c),
        sc_abs_dev=abs(estimate.sc_hat - sc_closed),
        estimate=estimate,
        closed_form=closed,
        sc_closed_form=sc_closed,
    )
    if not report.passed:
        logger.warning("%s at %s=%g failed: z_s=%.3g z_c=%.3g", model, model.sweep_variable, v, report.z_s, report.z_c)
    return report
