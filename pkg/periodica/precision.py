"""Scalar arithmetic for the two working precisions.

Standard precision uses Python floats. Extended precision uses a private
:class:`mpmath.MPContext` fixed at 40 significant digits, so the global
``mpmath.mp`` settings of the host program are never touched. The scalar
functions used here only read the context precision, so worker threads share
it. mpmath's matrix routines raise the working precision while they run; they
get a fresh context per call from :func:`matrix_context`.
"""
from __future__ import annotations

import math
import os
import sys
from dataclasses import dataclass
from typing import Any, Optional

import mpmath

from .errors import PeriodicaError
from .types.precision import Precision

EXTENDED_DPS = 40
PRECISION_ENV_VAR = "PERIODICA_PRECISION"

_EXTENDED_CONTEXT = mpmath.MPContext()
_EXTENDED_CONTEXT.dps = EXTENDED_DPS


@dataclass(frozen=True)
class Arithmetic:
    """Elementary functions and constants of one working precision."""

    precision: Precision
    eps: Any
    t_max: float
    ctx: Any = None

    def num(self, value: Any) -> Any:
        if self.ctx is None:
            return float(value)
        return self.ctx.mpf(value)

    @property
    def pi(self) -> Any:
        return math.pi if self.ctx is None else +self.ctx.pi

    def sqrt(self, x: Any) -> Any:
        return math.sqrt(x) if self.ctx is None else self.ctx.sqrt(x)

    def exp(self, x: Any) -> Any:
        return math.exp(x) if self.ctx is None else self.ctx.exp(x)

    def cosh(self, x: Any) -> Any:
        return math.cosh(x) if self.ctx is None else self.ctx.cosh(x)

    def sinh(self, x: Any) -> Any:
        return math.sinh(x) if self.ctx is None else self.ctx.sinh(x)

    def sin(self, x: Any) -> Any:
        return math.sin(x) if self.ctx is None else self.ctx.sin(x)

    def cos(self, x: Any) -> Any:
        return math.cos(x) if self.ctx is None else self.ctx.cos(x)

    def fsum(self, terms: Any) -> Any:
        if self.ctx is None:
            return math.fsum(terms)
        return self.ctx.fsum(terms)


STANDARD = Arithmetic(
    precision=Precision.STANDARD,
    eps=sys.float_info.epsilon,
    t_max=4.0,
)

EXTENDED = Arithmetic(
    precision=Precision.EXTENDED,
    eps=_EXTENDED_CONTEXT.mpf(10) ** (-EXTENDED_DPS),
    t_max=5.0,
    ctx=_EXTENDED_CONTEXT,
)


def parse_precision(value: Any) -> Precision:
    """Convert ``value`` into a :class:`Precision`."""

    if isinstance(value, Precision):
        return value
    try:
        return Precision(str(value).strip().lower())
    except ValueError as exc:
        raise PeriodicaError.validation_error(
            f"Invalid precision {value!r}: expected 'standard' or 'extended'",
            "INVALID_PRECISION",
            value=str(value),
        ) from exc


def precision_from_env(default: Precision = Precision.STANDARD) -> Precision:
    raw: Optional[str] = os.environ.get(PRECISION_ENV_VAR)
    if raw is None or not raw.strip():
        return default
    return parse_precision(raw)


def arithmetic_for(precision: Precision | str) -> Arithmetic:
    return EXTENDED if parse_precision(precision) is Precision.EXTENDED else STANDARD


def matrix_context() -> Any:
    """A fresh 40-digit context for one extended-precision matrix routine."""

    ctx = mpmath.MPContext()
    ctx.dps = EXTENDED_DPS
    return ctx
