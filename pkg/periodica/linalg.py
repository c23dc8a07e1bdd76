"""Dense linear algebra on small g×g matrices in either working precision.

Standard precision delegates to :mod:`scipy.linalg`; extended precision to
mpmath matrix routines, each run on its own fresh context. Matrices are
numpy arrays in both cases (``float64`` or ``object`` arrays of mpf).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Any

import numpy as np
import scipy.linalg

from .errors import PeriodicaError
from .precision import arithmetic_for, matrix_context
from .types.precision import Precision

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class LUFactors:
    """LU factorisation of a square matrix with partial pivoting."""

    precision: Precision
    matrix: Any
    lu: Any = None
    piv: Any = None
    condition: float = 1.0


def as_matrix(rows: Any, precision: Precision) -> np.ndarray:
    """Build a numpy matrix whose entries live in ``precision``."""

    arith = arithmetic_for(precision)
    if arith.ctx is None:
        return np.array(rows, dtype=float)
    return np.array([[arith.num(x) for x in row] for row in rows], dtype=object)


def _mp_matrix(ctx: Any, a: Any) -> Any:
    return ctx.matrix([[ctx.mpf(x) for x in row] for row in np.asarray(a)])


def lu_factor(a: np.ndarray, precision: Precision, name: str = "Pi0") -> LUFactors:
    """Factor ``a``; raise SINGULAR_MATRIX when its condition number exceeds 1/ε."""

    arith = arithmetic_for(precision)
    limit = 1.0 / float(arith.eps)
    if arith.ctx is None:
        matrix = np.asarray(a, dtype=float)
        condition = float(np.linalg.cond(matrix, 1))
        if not np.isfinite(condition) or condition > limit:
            raise PeriodicaError.singular_matrix_error(name, condition, limit)
        lu, piv = scipy.linalg.lu_factor(matrix)
        return LUFactors(precision, matrix, lu, piv, condition)

    ctx = matrix_context()
    matrix = np.asarray(a)
    try:
        condition = float(ctx.cond(_mp_matrix(ctx, matrix)))
    except ZeroDivisionError:
        condition = float("inf")
    if condition > limit:
        raise PeriodicaError.singular_matrix_error(name, condition, limit)
    logger.debug("%s condition number %.3g", name, condition)
    return LUFactors(precision, matrix, condition=condition)


def lu_solve(factors: LUFactors, b: np.ndarray) -> np.ndarray:
    """Solve A·X = B column by column from the factors of A."""

    if factors.lu is not None:
        return scipy.linalg.lu_solve((factors.lu, factors.piv), np.asarray(b, dtype=float))

    ctx = matrix_context()
    rhs = np.asarray(b)
    system = _mp_matrix(ctx, factors.matrix)
    columns = [
        ctx.lu_solve(system, ctx.matrix([ctx.mpf(x) for x in rhs[:, col]]))
        for col in range(rhs.shape[1])
    ]
    n = rhs.shape[0]
    return np.array([[columns[col][row] for col in range(len(columns))] for row in range(n)], dtype=object)


def det(factors: LUFactors) -> Any:
    """Determinant from the LU factors."""

    if factors.lu is not None:
        swaps = int(np.count_nonzero(factors.piv != np.arange(len(factors.piv))))
        sign = -1.0 if swaps % 2 else 1.0
        return sign * float(np.prod(np.diag(factors.lu)))
    ctx = matrix_context()
    return ctx.det(_mp_matrix(ctx, factors.matrix))


def solve(a: np.ndarray, b: np.ndarray, precision: Precision, name: str = "Pi0") -> np.ndarray:
    return lu_solve(lu_factor(a, precision, name), b)


def cholesky_ok(a: np.ndarray, precision: Precision) -> bool:
    """True when the symmetric matrix ``a`` is positive definite."""

    arith = arithmetic_for(precision)
    if arith.ctx is None:
        try:
            scipy.linalg.cholesky(np.asarray(a, dtype=float), lower=True)
        except np.linalg.LinAlgError:
            return False
        return True
    try:
        ctx = matrix_context()
        ctx.cholesky(_mp_matrix(ctx, a))
    except (ValueError, ZeroDivisionError):
        return False
    return True


def max_abs(a: np.ndarray) -> float:
    """Largest entry magnitude, as a float."""

    values = [abs(x) for x in np.asarray(a).ravel()]
    return float(max(values)) if values else 0.0


def inf_norm(a: np.ndarray) -> float:
    rows = np.asarray(a)
    return float(max(sum(abs(x) for x in row) for row in rows))
