"""Damped Newton solver for the branch parameters that realise given rectangle moduli."""
from __future__ import annotations

import logging
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .curve import CurveParams, validate_params
from .errors import PeriodicaError
from .polygon import forward_moduli
from .quadrature import QuadratureConfig
from .types.results import InversionResult, IterationRecord, ModuliTarget, SolverOptions
from .validation import validate_genus, validate_moduli

logger = logging.getLogger(__name__)

# A Jacobian with condition number above this is treated as singular.
JACOBIAN_COND_LIMIT = 1e12
# Consecutive residual increases accepted before giving up.
DIVERGENCE_STREAK = 5

ForwardMap = Callable[[Tuple[float, ...]], Tuple[float, ...]]


def _norm(values: Sequence[float]) -> float:
    return float(max(abs(v) for v in values))


def _ordered(a: Sequence[float]) -> bool:
    return a[0] > 1.0 and all(hi > lo for lo, hi in zip(a, a[1:]))


def project(previous: Sequence[float], candidate: Sequence[float]) -> Tuple[float, ...]:
    """Pull each component back inside its old neighbours by midpoint projection."""

    n = len(previous)
    projected = []
    for k in range(n):
        lower = 1.0 if k == 0 else previous[k - 1]
        upper = previous[k + 1] if k + 1 < n else float("inf")
        value = candidate[k]
        if value <= lower:
            value = (lower + previous[k]) / 2
        elif value >= upper:
            value = (upper + previous[k]) / 2
        projected.append(value)
    return tuple(projected)


def _default_forward(g: int, cfg: QuadratureConfig) -> ForwardMap:
    def forward(a: Tuple[float, ...]) -> Tuple[float, ...]:
        return forward_moduli(CurveParams(genus=g, a=tuple(a)), cfg)

    return forward


def _jacobian(
    forward: ForwardMap, a: Tuple[float, ...], base: Sequence[float], step: float
) -> np.ndarray:
    columns = []
    for k in range(len(a)):
        h = step * a[k]
        shifted = list(a)
        shifted[k] = a[k] + h
        if not _ordered(shifted):
            h = -h
            shifted[k] = a[k] + h
        values = forward(tuple(shifted))
        columns.append([(v - b) / h for v, b in zip(values, base)])
    return np.array(columns, dtype=float).T


def invert_moduli(
    g: int,
    target: ModuliTarget,
    guess: CurveParams,
    opts: Optional[SolverOptions] = None,
    cfg: Optional[QuadratureConfig] = None,
    forward: Optional[ForwardMap] = None,
) -> InversionResult:
    """Find a with ρ(a) = target, starting from ``guess``."""

    g = validate_genus(g)
    rho = validate_moduli(g, target.rho)
    guess = validate_params(guess.genus, guess.a)
    if guess.genus != g:
        raise PeriodicaError.validation_error(
            f"Invalid guess: genus {guess.genus} does not match {g}",
            "INVALID_GUESS",
            parameter_name="guess",
            value=list(guess.a),
        )
    opts = opts or SolverOptions()
    forward = forward or _default_forward(g, cfg or QuadratureConfig())

    def residual_vector(a: Tuple[float, ...]) -> List[float]:
        return [value - goal for value, goal in zip(forward(a), rho)]

    a = tuple(guess.a)
    r = residual_vector(a)
    residual = _norm(r)
    trace = [IterationRecord(iteration=0, a=a, residual=residual, step=0.0)]
    streak = 0

    for iteration in range(1, opts.max_iterations + 1):
        if residual <= opts.tolerance:
            return InversionResult(a=a, residual=residual, iterations=iteration - 1, trace=trace)

        base = [value + goal for value, goal in zip(r, rho)]
        jac = _jacobian(forward, a, base, opts.fd_step)
        condition = float(np.linalg.cond(jac))
        if not np.isfinite(condition) or condition > JACOBIAN_COND_LIMIT:
            raise PeriodicaError.solver_error(
                "SOLVER_SINGULAR_JACOBIAN",
                "Newton Jacobian is numerically singular",
                [record.to_payload() for record in trace],
                condition=condition,
            )
        delta = np.linalg.solve(jac, -np.array(r, dtype=float))

        t = 1.0
        accepted: Optional[Tuple[Tuple[float, ...], List[float], float]] = None
        fallback = None
        for _ in range(opts.max_halvings + 1):
            candidate = project(a, [x + t * d for x, d in zip(a, delta)])
            if _ordered(candidate):
                try:
                    r_candidate = residual_vector(candidate)
                except PeriodicaError as exc:
                    logger.debug("rejected step %.3g: %s", t, exc.message)
                else:
                    fallback = (candidate, r_candidate, t)
                    if _norm(r_candidate) < residual:
                        accepted = fallback
                        break
            t /= 2

        if accepted is None:
            if fallback is None:
                raise PeriodicaError.solver_error(
                    "SOLVER_DIVERGED",
                    "Line search found no admissible step",
                    [record.to_payload() for record in trace],
                )
            accepted = fallback
            streak += 1
        else:
            streak = 0

        a, r, t = accepted
        residual = _norm(r)
        trace.append(IterationRecord(iteration=iteration, a=a, residual=residual, step=t))
        logger.info("newton iteration %d: residual %.3g, step %.3g", iteration, residual, t)

        if streak >= DIVERGENCE_STREAK:
            raise PeriodicaError.solver_error(
                "SOLVER_DIVERGED",
                "Newton residual grew on consecutive iterations; target may be infeasible",
                [record.to_payload() for record in trace],
            )

    if residual <= opts.tolerance:
        return InversionResult(a=a, residual=residual, iterations=opts.max_iterations, trace=trace)
    raise PeriodicaError.solver_error(
        "SOLVER_MAX_ITERATIONS",
        f"Newton did not converge in {opts.max_iterations} iterations",
        [record.to_payload() for record in trace],
        residual=residual,
    )
