"""Typed structures shared across periodica modules."""
from .precision import ALL_PRECISIONS, Precision
from .results import (
    ABCMatrices,
    Cylinder,
    GammaCoeffs,
    Genus2Integrals,
    IntegralResult,
    InversionResult,
    IterationRecord,
    ModuliTarget,
    PeriodSet,
    PolygonLayout,
    Rect,
    ResidualGates,
    ResidualReport,
    SidePair,
    SideRef,
    SolverOptions,
)

__all__ = [
    "ALL_PRECISIONS",
    "Precision",
    "ABCMatrices",
    "Cylinder",
    "GammaCoeffs",
    "Genus2Integrals",
    "IntegralResult",
    "InversionResult",
    "IterationRecord",
    "ModuliTarget",
    "PeriodSet",
    "PolygonLayout",
    "Rect",
    "ResidualGates",
    "ResidualReport",
    "SidePair",
    "SideRef",
    "SolverOptions",
]
