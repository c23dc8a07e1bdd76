"""Assembly of Π₀, M, N and the period matrix Π = iΠ₀⁻¹MΠ₀N, plus residual checks."""
from __future__ import annotations

import logging
from typing import Any, List, Tuple

import numpy as np

from . import linalg
from .curve import CurveParams, entry_table
from .errors import PeriodicaError
from .polygon import square_condition_residual
from .precision import arithmetic_for
from .quadrature import QuadratureConfig, entry_results
from .types.precision import Precision
from .types.results import ABCMatrices, GammaCoeffs, Genus2Integrals, PeriodSet, ResidualReport

logger = logging.getLogger(__name__)


def _assemble_Pi0(p: CurveParams, cfg: QuadratureConfig) -> Tuple[np.ndarray, int]:
    entries = entry_table(p)
    results = entry_results(p, entries, cfg)
    g = p.genus
    rows: List[List[Any]] = [[None] * g for _ in range(g)]
    nodes_total = 0
    for e, result in zip(entries, results):
        if not result.converged:
            raise PeriodicaError.non_convergence_error(
                e.j, e.m, float(result.abs_error_estimate), result.nodes_used, k=e.k
            )
        rows[e.j - 1][e.k - 1] = result.value if e.sign > 0 else -result.value
        nodes_total += result.nodes_used
    return linalg.as_matrix(rows, cfg.precision), nodes_total


def build_Pi0(p: CurveParams, cfg: QuadratureConfig) -> np.ndarray:
    """Π₀ = [I_{j,k}]; aborts on the first non-converged entry."""

    return _assemble_Pi0(p, cfg)[0]


def build_M(g: int) -> np.ndarray:
    return np.diag([(-1) ** (j - 1) for j in range(1, g + 1)]).astype(int)


def build_N(g: int) -> np.ndarray:
    n = np.zeros((g, g), dtype=int)
    for j in range(1, g + 1):
        for k in range(1, g + 2 - j):
            n[j - 1, k - 1] = (-1) ** (g + 1 - j - k)
    return n


def antidiagonal_flip(g: int) -> np.ndarray:
    """J with J_{j,k} = δ_{j+k,g+1}."""

    return np.fliplr(np.eye(g, dtype=int))


def gamma_coeffs(g: int) -> GammaCoeffs:
    """γ_j = Σ_{k≥j} (−1)^{k−j} β_k, one column per γ_j."""

    t = np.zeros((g, g), dtype=int)
    for j in range(g):
        for k in range(j, g):
            t[k, j] = (-1) ** (k - j)
    return GammaCoeffs(T=t)


def build_ABC(p: CurveParams, cfg: QuadratureConfig) -> ABCMatrices:
    """A = 2Π₀, and the imaginary parts B = 2MΠ₀J, C = 2MΠ₀N."""

    g = p.genus
    pi0 = build_Pi0(p, cfg)
    m_pi0 = build_M(g) @ pi0
    return ABCMatrices(
        A=2 * pi0,
        B=2 * (m_pi0 @ antidiagonal_flip(g)),
        C=2 * (m_pi0 @ build_N(g)),
    )


def period_matrix(p: CurveParams, cfg: QuadratureConfig) -> PeriodSet:
    """Y with Π = iY, from one LU solve Π₀·Y = MΠ₀N."""

    g = p.genus
    pi0, nodes_total = _assemble_Pi0(p, cfg)
    m = build_M(g)
    n = build_N(g)
    y = linalg.solve(pi0, m @ pi0 @ n, cfg.precision, name="Pi0")
    logger.info("period matrix for genus %d computed with %d quadrature nodes", g, nodes_total)
    return PeriodSet(
        genus=g, Pi0=pi0, M=m, N=n, Y=y, precision=cfg.precision, nodes_total=nodes_total
    )


def genus2_integrals(p: CurveParams, cfg: QuadratureConfig) -> Genus2Integrals:
    if p.genus != 2:
        raise PeriodicaError.validation_error(
            "Invalid genus: the closed form applies to genus 2 only",
            "INVALID_GENUS",
            parameter_name="genus",
            value=p.genus,
        )
    pi0 = build_Pi0(p, cfg)
    return Genus2Integrals(p=pi0[0, 0], q=pi0[0, 1], r=pi0[1, 0], s=pi0[1, 1])


def genus2_closed_form(p: CurveParams, cfg: QuadratureConfig) -> np.ndarray:
    """Y = (1/(ps−qr))·[[2qs−pr, pr], [pr, −2pr]] for Π₀ = [[p, q], [r, s]]."""

    ints = genus2_integrals(p, cfg)
    return closed_form_from_integrals(ints, cfg.precision)


def closed_form_from_integrals(ints: Genus2Integrals, precision: Precision) -> np.ndarray:
    p, q, r, s = ints.p, ints.q, ints.r, ints.s
    denominator = p * s - q * r
    floor = float(arithmetic_for(precision).eps) * float(abs(p * s) + abs(q * r))
    if abs(denominator) <= floor:
        raise PeriodicaError.precision_floor_error("ps - qr", float(denominator), floor)
    pr = p * r
    rows = [[(2 * q * s - pr) / denominator, pr / denominator], [pr / denominator, -2 * pr / denominator]]
    return linalg.as_matrix(rows, precision)


def genus2_identity_residual(ints: Genus2Integrals) -> float:
    """|pr − ps − qr| relative to |pr| + |ps| + |qr|."""

    p, q, r, s = ints.p, ints.q, ints.r, ints.s
    scale = abs(p * r) + abs(p * s) + abs(q * r)
    return float(abs(p * r - p * s - q * r) / scale)


def siegel_residuals(y: np.ndarray, precision: Precision) -> Tuple[float, float, bool]:
    """(max|Y − Yᵀ|, |det Y − 1|, Cholesky of (Y + Yᵀ)/2 succeeds)."""

    symmetry = linalg.max_abs(y - y.T)
    try:
        det_minus_one = float(abs(linalg.det(linalg.lu_factor(y, precision, name="Y")) - 1))
    except PeriodicaError:
        det_minus_one = 1.0  # numerically singular: det Y is zero to working precision
    return symmetry, det_minus_one, linalg.cholesky_ok((y + y.T) / 2, precision)


def lemma_consistency(ps: PeriodSet) -> float:
    """Largest relative delta of C = B·T and A⁻¹C = Y, built from the stored Π₀."""

    g = ps.genus
    m_pi0 = ps.M @ ps.Pi0
    a = 2 * ps.Pi0
    b = 2 * (m_pi0 @ antidiagonal_flip(g))
    c = 2 * (m_pi0 @ ps.N)
    via_gamma = linalg.max_abs(c - b @ gamma_coeffs(g).T) / max(1.0, linalg.max_abs(c))
    via_abc = linalg.max_abs(linalg.solve(a, c, ps.precision, name="A") - ps.Y) / max(
        1.0, linalg.max_abs(ps.Y)
    )
    return max(via_gamma, via_abc)


def residuals(ps: PeriodSet, p: CurveParams, cfg: QuadratureConfig) -> ResidualReport:
    """Every residual of the Siegel, square-condition and cross-path checks; never raises on failure."""

    symmetry, det_minus_one, chol = siegel_residuals(ps.Y, ps.precision)
    report = ResidualReport(
        symmetry=symmetry,
        re_part=0.0,
        det_minus_one=det_minus_one,
        cholesky_ok=chol,
        square_condition=square_condition_residual(p, cfg),
        lemma_consistency=lemma_consistency(ps),
    )
    if ps.genus == 2:
        ints = Genus2Integrals(p=ps.Pi0[0, 0], q=ps.Pi0[0, 1], r=ps.Pi0[1, 0], s=ps.Pi0[1, 1])
        try:
            closed = closed_form_from_integrals(ints, ps.precision)
            report.closed_form_delta = linalg.max_abs(closed - ps.Y)
        except PeriodicaError:
            report.closed_form_delta = float("inf")
        report.genus2_identity = genus2_identity_residual(ints)
    return report
