"""The curve family w² = z(z²−1)(z²−a₁²)···(z²−a_{g−1}²) and its index conventions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

from .precision import STANDARD, Arithmetic
from .validation import validate_branch_parameters, validate_finite, validate_genus

logger = logging.getLogger(__name__)

# Below this gap between consecutive points of (1, a₁, …, a_{g−1}) standard
# precision no longer meets five-digit agreement.
CLUSTER_GAP = 1e-3

INFINITY = math.inf


@dataclass(slots=True, frozen=True)
class CurveParams:
    """Genus and branch parameters a₁…a_{g−1}; a₋₁ = 0, a₀ = 1, a_g = ∞ are implicit."""

    genus: int
    a: Tuple[float, ...]

    def endpoint(self, m: int) -> float:
        """Return a_m using the conventions a₋₁ = 0, a₀ = 1 and a_g = ∞."""

        if m == -1:
            return 0.0
        if m == 0:
            return 1.0
        if m == self.genus:
            return INFINITY
        return self.a[m - 1]

    @property
    def breakpoints(self) -> Tuple[float, ...]:
        return (0.0, 1.0) + self.a

    @property
    def roots(self) -> Tuple[float, ...]:
        """All 2g+1 finite roots of f in increasing order."""

        positive = (1.0,) + self.a
        return tuple(-x for x in reversed(positive)) + (0.0,) + positive

    @property
    def min_gap(self) -> float:
        chain = self.breakpoints[1:]
        return min(hi - lo for lo, hi in zip(chain, chain[1:]))

    @property
    def clustered(self) -> bool:
        return self.min_gap < CLUSTER_GAP

    def to_payload(self) -> Dict[str, Any]:
        return {"genus": self.genus, "a": list(self.a)}


@dataclass(slots=True, frozen=True)
class IntervalSpec:
    """The interval [a_{m−1}, a_m]; ``hi`` is infinite for m = g."""

    m: int
    lo: float
    hi: float

    @property
    def is_tail(self) -> bool:
        return math.isinf(self.hi)


@dataclass(slots=True, frozen=True)
class EntrySpec:
    """Entry I_{j,k} of Π₀: ``sign`` times the integral of z^{j−1}/√|f| over interval ``m``."""

    j: int
    k: int
    m: int
    sign: int


def validate_params(genus: Any, a: Sequence[Any]) -> CurveParams:
    """Validate the genus and branch parameters and build :class:`CurveParams`."""

    g = validate_genus(genus)
    values = validate_branch_parameters(g, list(a))
    params = CurveParams(genus=g, a=tuple(values))
    if params.clustered:
        logger.warning(
            "clustered branch points: min gap %.3g < %.0e; consider --precision extended",
            params.min_gap,
            CLUSTER_GAP,
        )
    return params


def interval(p: CurveParams, m: int) -> IntervalSpec:
    if not 0 <= m <= p.genus:
        raise ValueError(f"interval index {m} outside 0..{p.genus}")
    return IntervalSpec(m=m, lo=p.endpoint(m - 1), hi=p.endpoint(m))


def intervals(p: CurveParams) -> List[IntervalSpec]:
    return [interval(p, m) for m in range(p.genus + 1)]


def half_genus(g: int) -> int:
    return (g + 1) // 2


def column_interval(g: int, k: int) -> int:
    """Interval index m(k) carried by column k of Π₀."""

    if k <= half_genus(g):
        return g - 2 * k + 1
    return 2 * k - g - 2


def entry_sign(g: int, j: int, k: int) -> int:
    if k <= half_genus(g):
        return -1 if (j - 1) % 2 else 1
    return 1


def entry_table(p: CurveParams) -> List[EntrySpec]:
    """All g² entries of Π₀ in row-major order (j outer, k inner)."""

    g = p.genus
    return [
        EntrySpec(j=j, k=k, m=column_interval(g, k), sign=entry_sign(g, j, k))
        for j in range(1, g + 1)
        for k in range(1, g + 1)
    ]


def f_eval(p: CurveParams, z: Any, arithmetic: Arithmetic = STANDARD) -> Any:
    """Evaluate f(z) = z(z²−1)∏(z²−a_k²) in the working precision of ``arithmetic``."""

    x = arithmetic.num(validate_finite(z, "z") if arithmetic.ctx is None else z)
    x2 = x * x
    value = x * (x2 - 1)
    for a_k in p.a:
        a_num = arithmetic.num(a_k)
        value *= x2 - a_num * a_num
    return value


def marked_point_images(p: CurveParams) -> Dict[str, float]:
    """z-coordinates of the marked points p₀…p_g and q₁…q_g; o lies over ∞."""

    images: Dict[str, float] = {"p0": 0.0}
    for index, value in enumerate((1.0,) + p.a, start=1):
        images[f"p{index}"] = value
        images[f"q{index}"] = -value
    images["o"] = INFINITY
    return images
