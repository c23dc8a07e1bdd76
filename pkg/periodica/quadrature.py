"""Quadrature of z^{j−1}/√|f(z)| between consecutive branch points.

The primary scheme is tanh–sinh with level doubling. Nodes are stored as their
distance to the nearer endpoint, so |z − r| is formed from a gap between branch
points plus an endpoint distance and never by cancellation. The oracle is an
adaptive 15-point Gauss–Kronrod rule applied after a sine substitution that
removes both inverse-square-root endpoint singularities.
"""
from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Callable, Dict, List, Sequence, Tuple

from .curve import CurveParams, EntrySpec, interval
from .errors import PeriodicaError
from .precision import Arithmetic, arithmetic_for, parse_precision
from .types.precision import Precision
from .types.results import IntegralResult
from .validation import validate_integer_setting, validate_quadrature_settings

logger = logging.getLogger(__name__)

MIN_LEVEL = 3
# tolerances tighter than this many units of roundoff cannot be certified
TOLERANCE_FLOOR_ULPS = 10
ORACLE_REL_TOL = 1e-13
ORACLE_MAX_SEGMENTS = 4000

Integrand = Callable[[Any, Any, Any], Any]

# 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1].
_KRONROD_NODES = (
    "0.991455371120812639206854697526329",
    "0.949107912342758524526189684047851",
    "0.864864423359769072789712788640926",
    "0.741531185599394439863864773280788",
    "0.586087235467691130294144845693013",
    "0.405845151377397166906606412076961",
    "0.207784955007898467600689403773245",
    "0",
)
_KRONROD_WEIGHTS = (
    "0.022935322010529224963732008058970",
    "0.063092092629978553290700663189204",
    "0.104790010322250183839876322541518",
    "0.140653259715525918745189590510238",
    "0.169004726639267902826583426598550",
    "0.190350578064785409913256402421014",
    "0.204432940075298892414161999234649",
    "0.209482141084727828012999174891714",
)
_GAUSS_WEIGHTS = (
    "0",
    "0.129484966168869693270611432679082",
    "0",
    "0.279705391489276667901467771423780",
    "0",
    "0.381830050505118944950369775488975",
    "0",
    "0.417959183673469387755102040816327",
)


@dataclass(slots=True, frozen=True)
class QuadratureConfig:
    target_rel_tol: float = 1e-12
    max_level: int = 12
    precision: Precision = Precision.STANDARD
    oracle_mode: bool = False
    workers: int = 1

    def __post_init__(self) -> None:
        object.__setattr__(self, "precision", parse_precision(self.precision))
        floor = TOLERANCE_FLOOR_ULPS * float(arithmetic_for(self.precision).eps)
        validate_quadrature_settings(self.target_rel_tol, self.max_level, min_rel_tol=floor)
        validate_integer_setting(self.workers, "workers", 1)

    @classmethod
    def for_precision(cls, precision: Precision | str, **overrides: Any) -> "QuadratureConfig":
        resolved = parse_precision(precision)
        overrides.setdefault("target_rel_tol", 1e-30 if resolved is Precision.EXTENDED else 1e-12)
        return cls(precision=resolved, **overrides)

    @property
    def arithmetic(self) -> Arithmetic:
        return arithmetic_for(self.precision)


# ---------------------------------------------------------------------------
# tanh–sinh


@lru_cache(maxsize=None)
def _level_nodes(precision: Precision, level: int) -> Tuple[Tuple[Any, Any], ...]:
    """(complement, weight) pairs for the abscissae t > 0 first used at ``level``.

    ``complement`` is 1 − tanh(π/2·sinh t); ``weight`` is d/dt tanh(π/2·sinh t).
    """

    arith = arithmetic_for(precision)
    steps = 2**level
    last = int(math.floor(arith.t_max * steps))
    ks = range(1, last + 1) if level == 0 else range(1, last + 1, 2)
    half_pi = arith.pi / 2
    nodes = []
    for k in ks:
        t = arith.num(k) / steps
        q = arith.exp(-2 * half_pi * arith.sinh(t))
        complement = 2 * q / (1 + q)
        weight = half_pi * arith.cosh(t) * 4 * q / ((1 + q) ** 2)
        nodes.append((complement, weight))
    return tuple(nodes)


def _tanh_sinh(
    integrand: Integrand, lo: Any, hi: Any, arith: Arithmetic, cfg: QuadratureConfig
) -> IntegralResult:
    """Integrate ``integrand(z, z − lo, hi − z)`` over [lo, hi]."""

    half = (hi - lo) / 2
    two = arith.num(2)
    raw = arith.pi / 2 * integrand(lo + half, half, half)
    nodes_used = 1
    previous = None
    error = None
    for level in range(cfg.max_level + 1):
        terms = []
        for complement, weight in _level_nodes(arith.precision, level):
            near = half * complement
            far = half * (two - complement)
            upper = integrand(hi - near, far, near)
            lower = integrand(lo + near, near, far)
            terms.append(weight * (upper + lower))
        nodes_used += 2 * len(terms)
        raw = raw + arith.fsum(terms)
        estimate = raw * half / 2**level
        if previous is not None:
            error = max(abs(estimate - previous), arith.eps * abs(estimate))
            if level >= MIN_LEVEL and error <= cfg.target_rel_tol * abs(estimate):
                return IntegralResult(estimate, error, nodes_used, True, level)
        previous = estimate
    return IntegralResult(previous, error, nodes_used, False, cfg.max_level)


# ---------------------------------------------------------------------------
# adaptive Gauss–Kronrod


@lru_cache(maxsize=None)
def _kronrod_rule(precision: Precision) -> Tuple[Tuple[Any, Any, Any], ...]:
    arith = arithmetic_for(precision)
    return tuple(
        (arith.num(x), arith.num(wk), arith.num(wg))
        for x, wk, wg in zip(_KRONROD_NODES, _KRONROD_WEIGHTS, _GAUSS_WEIGHTS)
    )


def _gauss_kronrod(
    integrand: Callable[[Any], Any], a: Any, b: Any, arith: Arithmetic
) -> Tuple[Any, Any]:
    center = (a + b) / 2
    half = (b - a) / 2
    kronrod_terms = []
    gauss_terms = []
    for x, wk, wg in _kronrod_rule(arith.precision):
        if x == 0:
            value = integrand(center)
        else:
            value = integrand(center - half * x) + integrand(center + half * x)
        kronrod_terms.append(wk * value)
        gauss_terms.append(wg * value)
    kronrod = arith.fsum(kronrod_terms) * half
    gauss = arith.fsum(gauss_terms) * half
    return kronrod, abs(kronrod - gauss)


def _adaptive_gauss_kronrod(
    integrand: Callable[[Any], Any], a: Any, b: Any, arith: Arithmetic, rel_tol: float
) -> IntegralResult:
    value, error = _gauss_kronrod(integrand, a, b, arith)
    segments: List[Tuple[Any, Any, Any, Any]] = [(a, b, value, error)]
    while True:
        total = arith.fsum(segment[2] for segment in segments)
        total_error = arith.fsum(segment[3] for segment in segments)
        if total_error <= rel_tol * abs(total):
            return IntegralResult(total, total_error, 15 * len(segments), True)
        if len(segments) >= ORACLE_MAX_SEGMENTS:
            return IntegralResult(total, total_error, 15 * len(segments), False)

        worst = max(range(len(segments)), key=lambda index: segments[index][3])
        left, right = segments[worst][0], segments[worst][1]
        mid = (left + right) / 2
        left_value, left_error = _gauss_kronrod(integrand, left, mid, arith)
        right_value, right_error = _gauss_kronrod(integrand, mid, right, arith)
        segments[worst] = (left, mid, left_value, left_error)
        segments.append((mid, right, right_value, right_error))


# ---------------------------------------------------------------------------
# integrands


def _gaps(roots: Sequence[float], lo: float, hi: float, arith: Arithmetic) -> Tuple[List[Any], List[Any]]:
    inside = [r for r in roots if lo < r < hi]
    if inside:
        raise PeriodicaError.validation_error(
            "Invalid interval: endpoints are not consecutive branch points",
            "INVALID_INTERVAL",
            lo=lo,
            hi=hi,
            inside=inside,
        )
    lo_n, hi_n = arith.num(lo), arith.num(hi)
    below = [lo_n - arith.num(r) for r in roots if r <= lo]
    above = [arith.num(r) - hi_n for r in roots if r >= hi]
    return below, above


def _interval_integrand(
    roots: Sequence[float], lo: float, hi: float, power: int, arith: Arithmetic
) -> Integrand:
    below, above = _gaps(roots, lo, hi, arith)
    one = arith.num(1)

    def integrand(z: Any, d_lo: Any, d_hi: Any) -> Any:
        product = one
        for gap in below:
            product *= gap + d_lo
        for gap in above:
            product *= gap + d_hi
        return z**power / arith.sqrt(product)

    return integrand


def _oracle_interval_integrand(
    roots: Sequence[float], lo: float, hi: float, power: int, arith: Arithmetic
) -> Callable[[Any], Any]:
    """Integrand in θ after z = mid + half·sin θ; the endpoint factors cancel dz."""

    below, above = _gaps(roots, lo, hi, arith)
    below = [gap for gap in below if gap != 0]
    above = [gap for gap in above if gap != 0]
    lo_n, hi_n = arith.num(lo), arith.num(hi)
    span = hi_n - lo_n
    quarter_pi = arith.pi / 4
    one = arith.num(1)

    def integrand(theta: Any) -> Any:
        d_lo = span * arith.sin(quarter_pi + theta / 2) ** 2
        d_hi = span * arith.sin(quarter_pi - theta / 2) ** 2
        z = lo_n + d_lo if d_lo <= d_hi else hi_n - d_hi
        product = one
        for gap in below:
            product *= gap + d_lo
        for gap in above:
            product *= gap + d_hi
        return z**power / arith.sqrt(product)

    return integrand


def _tail_integrand(p: CurveParams, j: int, arith: Arithmetic) -> Integrand:
    """Integrand in s after z = a_{g−1}/s²: 2A^j s^{2g−2j} / √∏(A − r s²)."""

    top = arith.num(p.a[-1])
    terms = [(top - arith.num(r), arith.num(r)) for r in p.roots]
    scale = 2 * top**j
    exponent = 2 * p.genus - 2 * j
    one = arith.num(1)

    def integrand(s: Any, d_lo: Any, d_hi: Any) -> Any:
        one_minus_s2 = d_hi * (one + s)
        product = one
        for gap, r in terms:
            product *= gap + r * one_minus_s2
        return scale * s**exponent / arith.sqrt(abs(product))

    return integrand


def _oracle_tail_integrand(p: CurveParams, j: int, arith: Arithmetic) -> Callable[[Any], Any]:
    """Tail integrand in φ after s = sin φ; the root at a_{g−1} cancels ds."""

    top = arith.num(p.a[-1])
    terms = [(top - arith.num(r), arith.num(r)) for r in p.roots if r != p.a[-1]]
    scale = 2 * top**j / arith.sqrt(top)
    exponent = 2 * p.genus - 2 * j
    one = arith.num(1)

    def integrand(phi: Any) -> Any:
        s = arith.sin(phi)
        cos2 = arith.cos(phi) ** 2
        product = one
        for gap, r in terms:
            product *= gap + r * cos2
        return scale * s**exponent / arith.sqrt(product)

    return integrand


# ---------------------------------------------------------------------------
# public operations


def _check_power(p: CurveParams, j: int) -> None:
    if int(j) != j or not 1 <= j <= p.genus:
        raise PeriodicaError.validation_error(
            f"Invalid power index j={j}: must be in 1..{p.genus}",
            "INVALID_POWER",
            parameter_name="j",
            value=j,
        )


def _interval_index(p: CurveParams, lo: float, hi: float) -> int:
    for m in range(p.genus):
        if p.endpoint(m - 1) == lo and p.endpoint(m) == hi:
            return m
    raise PeriodicaError.validation_error(
        "Invalid interval: not bracketed by consecutive branch points",
        "INVALID_INTERVAL",
        lo=lo,
        hi=hi,
    )


def integrate_endpoint_singular(
    p: CurveParams, j: int, lo: float, hi: float, cfg: QuadratureConfig
) -> IntegralResult:
    """∫_lo^hi z^{j−1}/√|f(z)| dz over a finite interval between consecutive branch points."""

    _check_power(p, j)
    m = _interval_index(p, lo, hi)
    arith = cfg.arithmetic
    if cfg.oracle_mode:
        return _oracle_finite(p.roots, lo, hi, j - 1, arith, cfg)
    result = _tanh_sinh(
        _interval_integrand(p.roots, lo, hi, j - 1, arith), arith.num(lo), arith.num(hi), arith, cfg
    )
    _log_result(j, m, result)
    return result


def tail_integral(p: CurveParams, j: int, cfg: QuadratureConfig) -> IntegralResult:
    """∫_{a_{g−1}}^∞ z^{j−1}/√|f(z)| dz through the substitution z = a_{g−1}/s²."""

    _check_power(p, j)
    arith = cfg.arithmetic
    if cfg.oracle_mode:
        return _oracle_tail(p, j, arith, cfg)
    result = _tanh_sinh(_tail_integrand(p, j, arith), arith.num(0), arith.num(1), arith, cfg)
    _log_result(j, p.genus, result)
    return result


def _oracle_tolerance(cfg: QuadratureConfig) -> float:
    return min(ORACLE_REL_TOL, cfg.target_rel_tol)


def _oracle_finite(
    roots: Sequence[float], lo: float, hi: float, power: int, arith: Arithmetic, cfg: QuadratureConfig
) -> IntegralResult:
    half_pi = arith.pi / 2
    return _adaptive_gauss_kronrod(
        _oracle_interval_integrand(roots, lo, hi, power, arith),
        -half_pi,
        half_pi,
        arith,
        _oracle_tolerance(cfg),
    )


def _oracle_tail(p: CurveParams, j: int, arith: Arithmetic, cfg: QuadratureConfig) -> IntegralResult:
    return _adaptive_gauss_kronrod(
        _oracle_tail_integrand(p, j, arith), arith.num(0), arith.pi / 2, arith, _oracle_tolerance(cfg)
    )


@lru_cache(maxsize=4096)
def integrate_interval(p: CurveParams, j: int, m: int, cfg: QuadratureConfig) -> IntegralResult:
    """Raw integral of z^{j−1}/√|f| over [a_{m−1}, a_m], m = 0…g."""

    spec = interval(p, m)
    if spec.is_tail:
        return tail_integral(p, j, cfg)
    return integrate_endpoint_singular(p, j, spec.lo, spec.hi, cfg)


def oracle_integral(p: CurveParams, j: int, m: int, cfg: QuadratureConfig) -> IntegralResult:
    """The same integral through the Gauss–Kronrod oracle regardless of ``cfg.oracle_mode``."""

    _check_power(p, j)
    arith = cfg.arithmetic
    spec = interval(p, m)
    if spec.is_tail:
        return _oracle_tail(p, j, arith, cfg)
    return _oracle_finite(p.roots, spec.lo, spec.hi, j - 1, arith, cfg)


def entry_value(p: CurveParams, e: EntrySpec, cfg: QuadratureConfig) -> Any:
    """Signed entry I_{j,k} of Π₀."""

    result = integrate_interval(p, e.j, e.m, cfg)
    if not result.converged:
        raise PeriodicaError.non_convergence_error(
            e.j, e.m, float(result.abs_error_estimate), result.nodes_used, k=e.k
        )
    return result.value if e.sign > 0 else -result.value


def entry_results(
    p: CurveParams, entries: Sequence[EntrySpec], cfg: QuadratureConfig
) -> List[IntegralResult]:
    """Raw integrals for ``entries`` in order; evaluated on ``cfg.workers`` threads."""

    def run(e: EntrySpec) -> IntegralResult:
        return integrate_interval(p, e.j, e.m, cfg)

    if cfg.workers == 1:
        return [run(e) for e in entries]
    with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
        return list(pool.map(run, entries))


def calibration_integrals(cfg: QuadratureConfig) -> Dict[str, IntegralResult]:
    """Built-in integrands with exact value π, run through the tanh–sinh path."""

    arith = cfg.arithmetic
    cases = {
        "z(1-z) on [0,1]": ((0.0, 1.0), 0.0, 1.0),
        "1-z^2 on [-1,1]": ((-1.0, 1.0), -1.0, 1.0),
    }
    results: Dict[str, IntegralResult] = {}
    for name, (roots, lo, hi) in cases.items():
        if cfg.oracle_mode:
            results[name] = _oracle_finite(roots, lo, hi, 0, arith, cfg)
        else:
            results[name] = _tanh_sinh(
                _interval_integrand(roots, lo, hi, 0, arith), arith.num(lo), arith.num(hi), arith, cfg
            )
    return results


def tail_cutoff(p: CurveParams, j: int, bound: float = 1e-12) -> float:
    """Cut-off T beyond which the two-term asymptotic tail is accurate to ``bound``."""

    g = p.genus
    moment = sum(r * r for r in (1.0,) + p.a)
    return max(10.0 * p.a[-1], (moment**2 / bound) ** (1.0 / (g + 4.5 - j)))


def tail_truncation_oracle(
    p: CurveParams, j: int, cfg: QuadratureConfig, bound: float = 1e-12
) -> IntegralResult:
    """Oracle on [a_{g−1}, T] plus the asymptotic tail ∫_T^∞ z^{j−1−g−1/2}(1 + S/2z²) dz."""

    _check_power(p, j)
    arith = cfg.arithmetic
    g = p.genus
    top = arith.num(p.a[-1])
    cutoff = arith.num(tail_cutoff(p, j, bound))
    span = cutoff - top
    gaps = [top - arith.num(r) for r in p.roots if r != p.a[-1]]
    one = arith.num(1)

    def integrand(phi: Any) -> Any:
        offset = span * arith.sin(phi) ** 2
        z = top + offset
        product = one
        for gap in gaps:
            product *= gap + offset
        return 2 * arith.sqrt(span) * arith.cos(phi) * z ** (j - 1) / arith.sqrt(product)

    body = _adaptive_gauss_kronrod(integrand, arith.num(0), arith.pi / 2, arith, _oracle_tolerance(cfg))
    moment = arith.fsum(arith.num(r) ** 2 for r in (1.0,) + p.a)
    lead = arith.num(g) + arith.num(0.5) - j
    tail = cutoff ** (-lead) / lead + moment / 2 * cutoff ** (-lead - 2) / (lead + 2)
    return IntegralResult(body.value + tail, body.abs_error_estimate + bound, body.nodes_used, body.converged)


def _log_result(j: int, m: int, result: IntegralResult) -> None:
    if result.converged:
        logger.debug(
            "integral j=%d m=%d converged at level %d (%d nodes, error %.3g)",
            j,
            m,
            result.level,
            result.nodes_used,
            float(result.abs_error_estimate),
        )
    else:
        logger.warning(
            "integral j=%d m=%d did not converge (%d nodes, error %.3g)",
            j,
            m,
            result.nodes_used,
            float(result.abs_error_estimate),
        )
