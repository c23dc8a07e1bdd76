"""Constants that describe supported working precisions."""
from __future__ import annotations

from enum import Enum


class Precision(str, Enum):
    """Working precisions supported by the quadrature and linear algebra."""

    STANDARD = "standard"
    EXTENDED = "extended"


ALL_PRECISIONS = (
    Precision.STANDARD,
    Precision.EXTENDED,
)
