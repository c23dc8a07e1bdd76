"""Validation helpers for curve parameters and numerical settings."""
from __future__ import annotations

import math
import numbers
from typing import Any, List, Sequence

from .errors import PeriodicaError


def _to_float(value: Any, parameter_name: str) -> float:
    try:
        return float(value)
    except (ValueError, TypeError) as exc:
        raise PeriodicaError.validation_error(
            f"Invalid {parameter_name}: could not be converted to a number",
            "INVALID_NUMBER",
            parameter_name=parameter_name,
            value=str(value),
            reason="conversion_error",
        ) from exc


def validate_finite(value: Any, parameter_name: str) -> float:
    number = _to_float(value, parameter_name)
    if not math.isfinite(number):
        raise PeriodicaError.validation_error(
            f"Invalid {parameter_name}: must be a finite number",
            "INVALID_NUMBER",
            parameter_name=parameter_name,
            value=str(value),
            reason="not_finite",
        )
    return number


def validate_positive(value: Any, parameter_name: str) -> float:
    number = validate_finite(value, parameter_name)
    if number <= 0:
        raise PeriodicaError.validation_error(
            f"Invalid {parameter_name}: must be positive",
            "INVALID_NUMBER",
            parameter_name=parameter_name,
            value=str(value),
            reason="not_positive",
        )
    return number


def validate_genus(genus: Any) -> int:
    number = validate_finite(genus, "genus")
    if isinstance(genus, bool) or int(number) != number:
        raise PeriodicaError.validation_error(
            "Invalid genus: must be an integer",
            "INVALID_GENUS",
            parameter_name="genus",
            value=str(genus),
            reason="not_integer",
        )
    value = int(number)
    if value < 2:
        raise PeriodicaError.validation_error(
            "Invalid genus: must be at least 2",
            "INVALID_GENUS",
            parameter_name="genus",
            value=value,
            reason="too_small",
        )
    return value


def validate_branch_parameters(genus: int, values: Sequence[Any]) -> List[float]:
    """Validate ``1 < a_1 < ... < a_{g-1}`` and return the values as floats."""

    if len(values) != genus - 1:
        raise PeriodicaError.validation_error(
            f"Invalid a: genus {genus} needs {genus - 1} branch parameters, got {len(values)}",
            "INVALID_BRANCH_PARAMETERS",
            parameter_name="a",
            value=[str(v) for v in values],
            reason="wrong_length",
        )

    numbers = [validate_finite(v, f"a{k}") for k, v in enumerate(values, start=1)]
    for k, number in enumerate(numbers, start=1):
        if number <= 1:
            raise PeriodicaError.validation_error(
                f"Invalid a: a{k} ≤ 1 (got {number!r})",
                "INVALID_BRANCH_PARAMETERS",
                parameter_name=f"a{k}",
                value=number,
                reason="not_above_one",
            )
    for k in range(1, len(numbers)):
        if numbers[k] <= numbers[k - 1]:
            raise PeriodicaError.validation_error(
                "Invalid a: branch parameters must be strictly increasing",
                "INVALID_BRANCH_PARAMETERS",
                parameter_name=f"a{k + 1}",
                value=numbers,
                reason="not_increasing",
            )
    return numbers


def validate_moduli(genus: int, rho: Sequence[Any]) -> List[float]:
    if len(rho) != genus - 1:
        raise PeriodicaError.validation_error(
            f"Invalid rho: genus {genus} needs {genus - 1} aspect ratios, got {len(rho)}",
            "INVALID_MODULI",
            parameter_name="rho",
            value=[str(v) for v in rho],
            reason="wrong_length",
        )
    return [validate_positive(v, f"rho{k}") for k, v in enumerate(rho, start=1)]


def validate_integer_setting(value: Any, parameter_name: str, minimum: int) -> int:
    if (
        isinstance(value, bool)
        or not isinstance(value, numbers.Real)
        or not math.isfinite(value)
        or int(value) != value
    ):
        raise PeriodicaError.validation_error(
            f"Invalid {parameter_name}: must be an integer",
            "INVALID_QUADRATURE_SETTINGS",
            parameter_name=parameter_name,
            value=str(value),
            reason="not_integer",
        )
    if value < minimum:
        raise PeriodicaError.validation_error(
            f"Invalid {parameter_name}: must be at least {minimum}",
            "INVALID_QUADRATURE_SETTINGS",
            parameter_name=parameter_name,
            value=value,
            reason="too_small",
        )
    return int(value)


def validate_quadrature_settings(target_rel_tol: Any, max_level: Any, min_rel_tol: float = 0.0) -> None:
    """``min_rel_tol`` is the smallest tolerance the working precision can certify."""

    tolerance = validate_positive(target_rel_tol, "target_rel_tol")
    if tolerance < min_rel_tol:
        raise PeriodicaError.validation_error(
            f"Invalid target_rel_tol: below {min_rel_tol:.3g}, the resolution of the working precision",
            "INVALID_QUADRATURE_SETTINGS",
            parameter_name="target_rel_tol",
            value=tolerance,
            minimum=min_rel_tol,
            reason="below_precision",
        )
    validate_integer_setting(max_level, "max_level", 3)
