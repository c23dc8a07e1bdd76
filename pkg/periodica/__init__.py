"""Period matrices and staircase polygons of the curves w² = z(z²−1)∏(z²−a_k²)."""
from .client import Periodica, PeriodicaOptions
from .curve import CurveParams, EntrySpec, IntervalSpec, validate_params
from .errors import PeriodicaError
from .inverse import invert_moduli
from .periods import period_matrix, residuals
from .polygon import rectangle_dims
from .quadrature import QuadratureConfig
from .svg import layout_svg
from .types import (
    InversionResult,
    ModuliTarget,
    PeriodSet,
    PolygonLayout,
    Precision,
    ResidualGates,
    ResidualReport,
    SolverOptions,
)

__all__ = [
    "CurveParams",
    "EntrySpec",
    "IntervalSpec",
    "InversionResult",
    "ModuliTarget",
    "Periodica",
    "PeriodicaError",
    "PeriodicaOptions",
    "PeriodSet",
    "PolygonLayout",
    "Precision",
    "QuadratureConfig",
    "ResidualGates",
    "ResidualReport",
    "SolverOptions",
    "invert_moduli",
    "layout_svg",
    "period_matrix",
    "rectangle_dims",
    "residuals",
    "validate_params",
]
