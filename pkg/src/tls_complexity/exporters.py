"""
Curve tables for the command-line front end.

A ``CurveSpec`` names one complexity curve (any analytic model, a chi-inverse
sweep, the paramagnet or the mean-field Ising model) together with its fixed
parameters. ``CurveExporter`` evaluates a spec on a grid and formats the
result as CSV with the header ``x,S,R2,SC``.
"""

import csv
import logging
import math
from dataclasses import dataclass
from io import StringIO
from typing import Any, Dict, List, Optional, Tuple

from tqdm import tqdm

from . import settings
from .entropy import EntropyTriple
from .exceptions import DomainError
from .models import (
    LAMBDA_KINDS,
    ModelKind,
    ModelSpec,
    chi_inverse_point,
    model_complexity,
    radius,
    sweep_chi_inverse,
)
from .optimize import Bracket, MaximumResult, maximize_scalar
from .targets import FileTarget
from .thermal import IsingPoint, ParamagnetPoint, curie_weiss_solve, ising_complexity, paramagnet_complexity

logger = logging.getLogger(__name__)

CHI_INVERSE_MODELS = {
    "bin-lambda-inv": ModelKind.BINARY_LAMBDA,
    "box-lambda-inv": ModelKind.BOX_LAMBDA,
}
THERMAL_MODELS = ("paramagnet", "ising")
MODEL_NAMES = tuple(kind.value for kind in ModelKind) + tuple(CHI_INVERSE_MODELS) + THERMAL_MODELS

CSV_HEADER = ("x", "S", "R2", "SC")


@dataclass(frozen=True)
class CurveSpec:
    """
    A complexity curve identified by its command-line model name.

    Attributes:
        model: One of MODEL_NAMES
        chi: epsilon/W for bin-lambda and box-lambda
        zeta: Fixed zeta for the chi-inverse sweeps
        alpha: Field ratio for ising
    """

    model: str
    chi: Optional[float] = None
    zeta: Optional[float] = None
    alpha: Optional[float] = None

    def __post_init__(self):
        if self.model not in MODEL_NAMES:
            raise DomainError(f"Unknown model {self.model!r}; expected one of {', '.join(MODEL_NAMES)}")
        if self.chi is not None and self.model not in (ModelKind.BINARY_LAMBDA.value, ModelKind.BOX_LAMBDA.value):
            raise DomainError(f"--chi does not apply to {self.model}")
        if self.model in CHI_INVERSE_MODELS:
            if self.zeta is None:
                raise DomainError(f"{self.model} requires --zeta")
        elif self.zeta is not None:
            raise DomainError(f"--zeta does not apply to {self.model}")
        if self.alpha is not None and self.model != "ising":
            raise DomainError(f"--alpha does not apply to {self.model}")
        if self.model == "ising" and self.alpha is None:
            object.__setattr__(self, "alpha", 0.0)
        if self.model_spec is not None:
            # Validates chi
            self.model_spec  # noqa: B018

    @property
    def model_spec(self) -> Optional[ModelSpec]:
        try:
            kind = ModelKind(self.model)
        except ValueError:
            return None
        return ModelSpec(kind, chi=self.chi if kind in LAMBDA_KINDS else None)

    @property
    def sweep_variable(self) -> str:
        if self.model in CHI_INVERSE_MODELS:
            return "chi_inv"
        if self.model == "ising":
            return "t_over_tc"
        if self.model == "paramagnet":
            return "x"
        return self.model_spec.sweep_variable

    def params(self) -> Dict[str, float]:
        """The fixed parameters that apply to this curve."""
        values = {"chi": self.chi, "zeta": self.zeta, "alpha": self.alpha}
        spec = self.model_spec
        if spec is not None and spec.chi is not None:
            values["chi"] = spec.chi
        return {key: value for key, value in values.items() if value is not None}

    def triple(self, v: float, normalized: bool = False) -> EntropyTriple:
        """Entropies at sweep value v."""
        if self.model in CHI_INVERSE_MODELS:
            return sweep_chi_inverse(CHI_INVERSE_MODELS[self.model], self.zeta, v, normalized)
        if self.model == "paramagnet":
            return paramagnet_complexity(ParamagnetPoint(v), normalized)
        if self.model == "ising":
            return ising_complexity(IsingPoint(v, self.alpha), normalized)
        return model_complexity(self.model_spec, v, normalized)

    def radius(self, v: float) -> float:
        """Bloch radius behind the complexity at v: r, |m| or tanh(x)."""
        if self.model in CHI_INVERSE_MODELS:
            chi, tau = chi_inverse_point(self.zeta, v)
            return radius(ModelSpec(CHI_INVERSE_MODELS[self.model], chi=chi), tau)
        if self.model == "paramagnet":
            return math.tanh(ParamagnetPoint(v).x)
        if self.model == "ising":
            return abs(curie_weiss_solve(IsingPoint(v, self.alpha)).m)
        return radius(self.model_spec, v)

    def default_bracket(self) -> Bracket:
        return Bracket(*settings.DEFAULT_BRACKETS[self.model])

    def maximize(self, bracket: Optional[Bracket] = None, tol: float = settings.DEFAULT_TOL) -> MaximumResult:
        """Locate the complexity maximum along the sweep."""
        return maximize_scalar(lambda v: self.triple(v).complexity, bracket or self.default_bracket(), tol)


@dataclass(frozen=True)
class CurveRequest:
    """
    A curve evaluated on a grid.

    Attributes:
        spec: Which curve
        lo, hi: Sweep range
        points: Number of grid points, at least 2
        log_grid: Geometric instead of linear spacing; requires lo > 0
        normalized: Report entropies in units of ln 2
    """

    spec: CurveSpec
    lo: float
    hi: float
    points: int
    log_grid: bool = False
    normalized: bool = False

    def __post_init__(self):
        if self.points < 2:
            raise DomainError(f"points must be >= 2, got {self.points}")
        # Bracket validates lo < hi and lo > 0 on a log grid
        self.bracket  # noqa: B018

    @property
    def bracket(self) -> Bracket:
        return Bracket(self.lo, self.hi, self.log_grid)

    def grid(self) -> List[float]:
        values = [float(v) for v in self.bracket.grid(self.points)]
        # geomspace/linspace can miss the end points by an ulp
        values[0], values[-1] = self.lo, self.hi
        return values


class CurveExporter:
    """
    Evaluates curves and writes them as CSV.

    Rows are (x, S, R2, SC). Numbers use Python's shortest round-trip repr
    and lines end in LF, so identical requests give identical bytes.
    """

    def __init__(self, progress: bool = False):
        self.progress = progress

    def rows(self, request: CurveRequest) -> List[Tuple[float, float, float, float]]:
        rows = []
        grid = request.grid()
        for v in tqdm(grid, desc=f"Evaluating {request.spec.model}", disable=not self.progress):
            triple = request.spec.triple(v, request.normalized)
            rows.append((v, triple.shannon, triple.renyi2, triple.complexity))
        return rows

    def format_csv(self, rows: List[Tuple[float, ...]]) -> str:
        output = StringIO()
        writer = csv.writer(output, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow([repr(float(value)) for value in row])
        return output.getvalue()

    def export(self, request: CurveRequest, target: FileTarget, file_path: str) -> Dict[str, Any]:
        """
        Evaluate a curve and write it to ``file_path`` under the target.

        Returns:
            Write statistics from the target plus the curve's peak row
        """
        rows = self.rows(request)
        result = target.write_csv(file_path, self.format_csv(rows))
        peak = max(rows, key=lambda row: row[3])
        logger.info("wrote %d rows to %s; SC peaks at x=%g", len(rows), result["file_path"], peak[0])
        result["peak_x"] = peak[0]
        return result
