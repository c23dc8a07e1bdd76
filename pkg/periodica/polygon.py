"""The staircase polygon P = P₀ ∪ ⋃(P_i ∪ Q_i) rebuilt from the interval lengths I₀…I_g.

The scaling constant c between the flat metric and dz/w is fixed to 1.
"""
from __future__ import annotations

import logging
from typing import Any, Dict, List, Sequence, Tuple

from .curve import CurveParams, intervals
from .errors import PeriodicaError
from .quadrature import QuadratureConfig, integrate_interval
from .types.results import SQUARE_TOL, Cylinder, PolygonLayout, Rect, SidePair, SideRef

logger = logging.getLogger(__name__)

# Relative tolerance for treating two rectangle spans as the same; a layout
# accepted as square is misaligned by at most half its square defect.
SPAN_TOL = SQUARE_TOL


def interval_lengths(p: CurveParams, cfg: QuadratureConfig) -> List[Any]:
    """I_m = ∫ dz/√|f| over [a_{m−1}, a_m] for m = 0…g."""

    lengths = []
    for spec in intervals(p):
        result = integrate_interval(p, 1, spec.m, cfg)
        if not result.converged:
            raise PeriodicaError.non_convergence_error(
                1, spec.m, float(result.abs_error_estimate), result.nodes_used
            )
        lengths.append(result.value)
    return lengths


def square_condition_signs(g: int) -> List[int]:
    """(−1)^⌊(j+1)/2⌋ for j = 0…g."""

    return [-1 if ((j + 1) // 2) % 2 else 1 for j in range(g + 1)]


def square_condition_sum(lengths: Sequence[Any]) -> Any:
    signs = square_condition_signs(len(lengths) - 1)
    return sum(sign * length for sign, length in zip(signs, lengths))


def square_condition_residual(p: CurveParams, cfg: QuadratureConfig) -> float:
    """|Σ(−1)^⌊(j+1)/2⌋ I_j| / Σ I_j."""

    lengths = interval_lengths(p, cfg)
    return float(abs(square_condition_sum(lengths)) / sum(lengths))


def is_horizontal(g: int, m: int) -> bool:
    """Whether the closed geodesic over interval m runs horizontally."""

    return m % 2 == g % 2


def rectangle_sizes(g: int, lengths: Sequence[float]) -> List[Tuple[float, float]]:
    """(width, height) of P₀…P_{g−1} from the backward recurrence."""

    sizes: List[Tuple[float, float]] = [(0.0, 0.0)] * g
    sizes[g - 1] = (2 * lengths[g], 2 * lengths[g - 1])
    for m in range(g - 2, -1, -1):
        width, height = sizes[m + 1]
        if is_horizontal(g, m):
            sizes[m] = (2 * lengths[m] - width, height)
        else:
            sizes[m] = (width, 2 * lengths[m] - height)
    return sizes


def _reflect_point(s: float, point: Tuple[float, float]) -> Tuple[float, float]:
    x, y = point
    return (s - y, s - x)


def _reflect_rect(s: float, rect: Rect, label: str) -> Rect:
    return Rect(label=label, x=s - rect.y1, y=s - rect.x1, width=rect.height, height=rect.width)


def _same(a: float, b: float, scale: float) -> bool:
    return abs(a - b) <= SPAN_TOL * scale


def _chains(rects: Sequence[Rect], horizontal: bool, scale: float) -> List[List[Rect]]:
    """Maximal rows (or columns) of rectangles glued along full sides."""

    def follows(a: Rect, b: Rect) -> bool:
        if horizontal:
            return _same(a.x1, b.x, scale) and _same(a.y, b.y, scale) and _same(a.y1, b.y1, scale)
        return _same(a.y1, b.y, scale) and _same(a.x, b.x, scale) and _same(a.x1, b.x1, scale)

    chains = []
    for start in rects:
        if any(follows(other, start) for other in rects if other is not start):
            continue
        chain = [start]
        while True:
            nxt = next((r for r in rects if r is not chain[-1] and follows(chain[-1], r)), None)
            if nxt is None:
                break
            chain.append(nxt)
        chains.append(chain)
    return chains


def side_identifications(rects: Sequence[Rect]) -> List[SidePair]:
    """Pair the two exposed ends of every maximal row and column."""

    scale = max(max(r.x1, r.y1) - min(r.x, r.y) for r in rects)
    pairs = [
        SidePair(SideRef(chain[0].label, "left"), SideRef(chain[-1].label, "right"))
        for chain in _chains(rects, True, scale)
    ]
    pairs.extend(
        SidePair(SideRef(chain[0].label, "bottom"), SideRef(chain[-1].label, "top"))
        for chain in _chains(rects, False, scale)
    )
    return pairs


def layout_from_lengths(g: int, lengths: Sequence[float]) -> PolygonLayout:
    """Place P₀…P_{g−1} as a staircase from the origin and reflect them across l."""

    sizes = rectangle_sizes(g, lengths)
    for index, (width, height) in enumerate(sizes):
        if width <= 0 or height <= 0:
            raise PeriodicaError.nonpositive_dimension_error(f"P{index}", width, height)

    p_rects: List[Rect] = []
    x = y = 0.0
    for m, (width, height) in enumerate(sizes):
        p_rects.append(Rect(label=f"P{m}", x=x, y=y, width=width, height=height))
        if is_horizontal(g, m):
            x += width
        else:
            y += height

    p0 = p_rects[0]
    s = (p0.width + p0.height) / 2
    q_rects = [_reflect_rect(s, rect, f"Q{m}") for m, rect in enumerate(p_rects) if m > 0]

    last = p_rects[-1]
    if g % 2 == 0:
        p_g = (last.x + last.width / 2, last.y1)
    else:
        p_g = (last.x1, last.y + last.height / 2)
    marked: Dict[str, Tuple[float, float]] = {}
    for rect in p_rects:
        marked[f"p{rect.label[1:]}"] = rect.center
    for rect in q_rects:
        marked[f"q{rect.label[1:]}"] = rect.center
    marked[f"p{g}"] = p_g
    marked[f"q{g}"] = _reflect_point(s, p_g)
    marked["o"] = (last.x1, last.y1)
    marked["o'"] = _reflect_point(s, (last.x1, last.y1))

    cylinders = [
        Cylinder(m=m, direction="horizontal" if is_horizontal(g, m) else "vertical", length=2 * lengths[m])
        for m in range(g + 1)
    ]
    rects = p_rects + q_rects
    layout = PolygonLayout(
        genus=g,
        rects=rects,
        identifications=side_identifications(rects),
        marked_points=marked,
        reflection_line=((0.0, s), (s, 0.0)),
        cylinders=cylinders,
        interval_lengths=list(lengths),
    )
    if not layout.is_square():
        logger.warning("P0 is not square: |w - h| = %.3g", layout.square_defect)
    return layout


def rectangle_dims(p: CurveParams, cfg: QuadratureConfig) -> PolygonLayout:
    lengths = [float(length) for length in interval_lengths(p, cfg)]
    return layout_from_lengths(p.genus, lengths)


def moduli_from_lengths(g: int, lengths: Sequence[float]) -> Tuple[float, ...]:
    sizes = rectangle_sizes(g, lengths)
    return tuple(height / width for width, height in sizes[1:])


def forward_moduli(p: CurveParams, cfg: QuadratureConfig) -> Tuple[float, ...]:
    """Aspect ratios ρ_k = h(P_k)/w(P_k) for k = 1…g−1."""

    lengths = [float(length) for length in interval_lengths(p, cfg)]
    return moduli_from_lengths(p.genus, lengths)
