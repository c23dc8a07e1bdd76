"""Dataclasses describing the results returned by periodica."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .precision import Precision

# Relative tolerance on |w(P0) - h(P0)| for calling the polygon square.
SQUARE_TOL = 1e-9


@dataclass(slots=True, frozen=True)
class IntegralResult:
    value: Any
    abs_error_estimate: Any
    nodes_used: int
    converged: bool
    level: int = 0


@dataclass(slots=True)
class PeriodSet:
    """Π₀, M, N and Y = Π₀⁻¹MΠ₀N; the period matrix is Π = i·Y."""

    genus: int
    Pi0: np.ndarray
    M: np.ndarray
    N: np.ndarray
    Y: np.ndarray
    precision: Precision = Precision.STANDARD
    nodes_total: int = 0


@dataclass(slots=True, frozen=True)
class GammaCoeffs:
    """Column j of ``T`` holds the β-coefficients of γ_j."""

    T: np.ndarray


@dataclass(slots=True)
class ABCMatrices:
    """A is real; B and C are purely imaginary and stored by their imaginary parts."""

    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    imaginary: Tuple[bool, bool, bool] = (False, True, True)


@dataclass(slots=True, frozen=True)
class Genus2Integrals:
    p: Any
    q: Any
    r: Any
    s: Any


@dataclass(slots=True, frozen=True)
class ResidualGates:
    """Tolerances a :class:`ResidualReport` must meet; exposed as CLI overrides."""

    symmetry: float = 1e-8
    determinant: float = 1e-8
    square_condition: float = 1e-10
    closed_form: float = 1e-8
    lemma_consistency: float = 1e-10

    @classmethod
    def for_precision(cls, precision: Precision) -> "ResidualGates":
        if precision is Precision.EXTENDED:
            return cls(1e-20, 1e-20, 1e-20, 1e-20, 1e-20)
        return cls()


@dataclass(slots=True)
class ResidualReport:
    symmetry: float
    re_part: float
    det_minus_one: float
    cholesky_ok: bool
    square_condition: float
    lemma_consistency: float
    closed_form_delta: Optional[float] = None
    genus2_identity: Optional[float] = None

    def failures(self, gates: "ResidualGates", scale: float = 1.0) -> Dict[str, float]:
        """Return the residuals that exceed ``gates``; ``scale`` multiplies the symmetry gate."""

        failed: Dict[str, float] = {}
        if self.symmetry > gates.symmetry * max(1.0, scale):
            failed["symmetry"] = self.symmetry
        if self.det_minus_one > gates.determinant:
            failed["det_minus_one"] = self.det_minus_one
        if not self.cholesky_ok:
            failed["cholesky_ok"] = 0.0
        if self.square_condition > gates.square_condition:
            failed["square_condition"] = self.square_condition
        if self.lemma_consistency > gates.lemma_consistency:
            failed["lemma_consistency"] = self.lemma_consistency
        if self.closed_form_delta is not None and self.closed_form_delta > gates.closed_form:
            failed["closed_form_delta"] = self.closed_form_delta
        return failed


@dataclass(slots=True, frozen=True)
class Rect:
    label: str
    x: float
    y: float
    width: float
    height: float

    @property
    def x1(self) -> float:
        return self.x + self.width

    @property
    def y1(self) -> float:
        return self.y + self.height

    @property
    def center(self) -> Tuple[float, float]:
        return (self.x + self.width / 2, self.y + self.height / 2)

    @property
    def area(self) -> float:
        return self.width * self.height


@dataclass(slots=True, frozen=True)
class SideRef:
    label: str
    side: str  # "left" | "right" | "bottom" | "top"


@dataclass(slots=True, frozen=True)
class SidePair:
    first: SideRef
    second: SideRef

    @property
    def direction(self) -> str:
        return "horizontal" if self.first.side in ("left", "right") else "vertical"


@dataclass(slots=True, frozen=True)
class Cylinder:
    m: int
    direction: str
    length: float


@dataclass(slots=True)
class PolygonLayout:
    genus: int
    rects: List[Rect]
    identifications: List[SidePair]
    marked_points: Dict[str, Tuple[float, float]]
    reflection_line: Tuple[Tuple[float, float], Tuple[float, float]]
    cylinders: List[Cylinder] = field(default_factory=list)
    interval_lengths: List[float] = field(default_factory=list)
    scale_note: str = "c = 1"

    def rect(self, label: str) -> Rect:
        for rect in self.rects:
            if rect.label == label:
                return rect
        raise KeyError(label)

    @property
    def square_defect(self) -> float:
        p0 = self.rect("P0")
        return abs(p0.width - p0.height)

    def is_square(self, tol: float = SQUARE_TOL) -> bool:
        p0 = self.rect("P0")
        return self.square_defect <= tol * p0.width

    @property
    def area(self) -> float:
        return sum(rect.area for rect in self.rects)


@dataclass(slots=True, frozen=True)
class ModuliTarget:
    """Target aspect ratios ρ_k = h(P_k)/w(P_k) for k = 1…g−1."""

    rho: Tuple[float, ...]


@dataclass(slots=True, frozen=True)
class SolverOptions:
    max_iterations: int = 100
    tolerance: float = 1e-8
    fd_step: float = 1e-6
    max_halvings: int = 20


@dataclass(slots=True)
class IterationRecord:
    iteration: int
    a: Tuple[float, ...]
    residual: float
    step: float

    def to_payload(self) -> Mapping[str, Any]:
        return {
            "iteration": self.iteration,
            "a": list(self.a),
            "residual": self.residual,
            "step": self.step,
        }


@dataclass(slots=True)
class InversionResult:
    a: Tuple[float, ...]
    residual: float
    iterations: int
    trace: List[IterationRecord] = field(default_factory=list)
