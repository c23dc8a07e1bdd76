"""Custom exceptions for the periodica package."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Mapping, Optional

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3
EXIT_GATE = 4

_EXIT_CODES = {
    "VALIDATION_ERROR": EXIT_VALIDATION,
    "QUADRATURE_NOT_CONVERGED": EXIT_NUMERICAL,
    "SINGULAR_MATRIX": EXIT_NUMERICAL,
    "PRECISION_FLOOR": EXIT_NUMERICAL,
    "NONPOSITIVE_DIMENSION": EXIT_NUMERICAL,
    "SOLVER_MAX_ITERATIONS": EXIT_NUMERICAL,
    "SOLVER_SINGULAR_JACOBIAN": EXIT_NUMERICAL,
    "SOLVER_DIVERGED": EXIT_NUMERICAL,
    "GATE_FAILURE": EXIT_GATE,
}


@dataclass(eq=False)
class PeriodicaError(Exception):
    """Base exception raised by periodica."""

    message: str
    code: str
    details: Optional[Mapping[str, Any]] = None

    def __post_init__(self) -> None:
        super().__init__(self.message)

    @property
    def exit_code(self) -> int:
        return _EXIT_CODES.get(self.code, EXIT_NUMERICAL)

    @classmethod
    def validation_error(
        cls, message: str, error_type: str, **details: Any
    ) -> "PeriodicaError":
        return cls(message, "VALIDATION_ERROR", {"type": error_type, **details})

    @classmethod
    def non_convergence_error(
        cls,
        j: int,
        interval: int,
        abs_error_estimate: float,
        nodes_used: int,
        k: Optional[int] = None,
    ) -> "PeriodicaError":
        location = f"entry ({j},{k})" if k is not None else f"power {j}"
        return cls(
            f"Quadrature did not converge for {location} on interval {interval}",
            "QUADRATURE_NOT_CONVERGED",
            {
                "j": j,
                "k": k,
                "interval": interval,
                "abs_error_estimate": abs_error_estimate,
                "nodes_used": nodes_used,
            },
        )

    @classmethod
    def singular_matrix_error(cls, name: str, condition: float, limit: float) -> "PeriodicaError":
        return cls(
            f"Matrix {name} is numerically singular in the working precision; "
            "retry with --precision extended",
            "SINGULAR_MATRIX",
            {"matrix": name, "condition": condition, "limit": limit},
        )

    @classmethod
    def precision_floor_error(cls, quantity: str, value: float, floor: float) -> "PeriodicaError":
        return cls(
            f"{quantity} is below the precision floor",
            "PRECISION_FLOOR",
            {"quantity": quantity, "value": value, "floor": floor},
        )

    @classmethod
    def nonpositive_dimension_error(
        cls, label: str, width: float, height: float
    ) -> "PeriodicaError":
        return cls(
            f"Rectangle {label} has a nonpositive side",
            "NONPOSITIVE_DIMENSION",
            {"label": label, "width": width, "height": height},
        )

    @classmethod
    def solver_error(
        cls, code: str, message: str, trace: Optional[list] = None, **details: Any
    ) -> "PeriodicaError":
        return cls(message, code, {"trace": list(trace or []), **details})

    @classmethod
    def gate_failure_error(cls, failed: Mapping[str, Any]) -> "PeriodicaError":
        names = ", ".join(sorted(failed))
        return cls(
            f"Residual gates failed: {names}",
            "GATE_FAILURE",
            {"failed": dict(failed)},
        )
