"""Public entry point tying the periodica pipelines together."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Any, Dict, Optional, Sequence, Tuple

from . import linalg, periods, polygon, quadrature
from .curve import CurveParams, validate_params
from .errors import PeriodicaError
from .inverse import ForwardMap, invert_moduli
from .precision import parse_precision
from .quadrature import QuadratureConfig
from .svg import layout_svg
from .types.precision import Precision
from .types.results import (
    InversionResult,
    IntegralResult,
    ModuliTarget,
    PeriodSet,
    PolygonLayout,
    ResidualGates,
    ResidualReport,
    SolverOptions,
)
from .validation import validate_integer_setting


@dataclass(slots=True)
class PeriodicaOptions:
    """Run settings. ``precision`` defaults to the explicit quadrature's, else standard."""

    precision: Optional[Precision] = None
    quadrature: Optional[QuadratureConfig] = None
    gates: Optional[ResidualGates] = None
    workers: int = 1
    solver: SolverOptions = field(default_factory=SolverOptions)

    def __post_init__(self) -> None:
        validate_integer_setting(self.workers, "workers", 1)
        if self.quadrature is None:
            self.precision = parse_precision(self.precision or Precision.STANDARD)
            self.quadrature = QuadratureConfig.for_precision(self.precision, workers=self.workers)
        elif self.precision is None:
            self.precision = self.quadrature.precision
        else:
            self.precision = parse_precision(self.precision)
            if self.quadrature.precision is not self.precision:
                raise PeriodicaError.validation_error(
                    f"Invalid options: precision {self.precision.value!r} conflicts with the "
                    f"quadrature precision {self.quadrature.precision.value!r}",
                    "INCONSISTENT_PRECISION",
                    parameter_name="precision",
                    value=self.precision.value,
                    quadrature=self.quadrature.precision.value,
                )
        if self.workers > 1 and self.quadrature.workers != self.workers:
            self.quadrature = replace(self.quadrature, workers=self.workers)
        if self.gates is None:
            self.gates = ResidualGates.for_precision(self.precision)


@dataclass(slots=True)
class Verification:
    report: ResidualReport
    failed: Dict[str, float]

    @property
    def passed(self) -> bool:
        return not self.failed


class Periodica:
    """Computes period matrices, polygons and moduli inversions for one configuration."""

    def __init__(self, options: Optional[PeriodicaOptions] = None) -> None:
        self.options = options or PeriodicaOptions()

    @property
    def config(self) -> QuadratureConfig:
        return self.options.quadrature

    @property
    def gates(self) -> ResidualGates:
        return self.options.gates

    def curve(self, genus: Any, a: Sequence[Any]) -> CurveParams:
        return validate_params(genus, a)

    def period(self, params: CurveParams) -> PeriodSet:
        return periods.period_matrix(params, self.config)

    def residuals(self, ps: PeriodSet, params: CurveParams) -> ResidualReport:
        return periods.residuals(ps, params, self.config)

    def period_with_residuals(self, params: CurveParams) -> Tuple[PeriodSet, ResidualReport]:
        ps = self.period(params)
        return ps, self.residuals(ps, params)

    def verify(self, params: CurveParams) -> Tuple[PeriodSet, Verification]:
        ps, report = self.period_with_residuals(params)
        failed = report.failures(self.gates, scale=max(1.0, linalg.inf_norm(ps.Y)))
        return ps, Verification(report=report, failed=failed)

    def polygon(self, params: CurveParams) -> PolygonLayout:
        return polygon.rectangle_dims(params, self.config)

    def polygon_svg(self, params: CurveParams) -> str:
        return layout_svg(self.polygon(params))

    def moduli(self, params: CurveParams) -> Tuple[float, ...]:
        return polygon.forward_moduli(params, self.config)

    def invert(
        self,
        target: ModuliTarget,
        guess: CurveParams,
        forward: Optional[ForwardMap] = None,
    ) -> InversionResult:
        return invert_moduli(guess.genus, target, guess, self.options.solver, self.config, forward)

    def calibrate(self) -> Dict[str, IntegralResult]:
        return quadrature.calibration_integrals(self.config)
