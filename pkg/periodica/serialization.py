"""JSON, CSV and plain-text renderings of periodica reports.

The JSON layout is documented in ``docs/schema.md``. Every report carries
``schema_version`` and ``kind``; numbers are IEEE doubles, written so that
``parse(emit(x)) == x``. Non-finite values are written as ``null``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .curve import CurveParams, marked_point_images
from .errors import PeriodicaError
from .precision import parse_precision
from .types.results import (
    Cylinder,
    InversionResult,
    IterationRecord,
    PeriodSet,
    PolygonLayout,
    Rect,
    ResidualReport,
    SidePair,
    SideRef,
)

SCHEMA_VERSION = 1
MACHINE_DIGITS = 17
PRETTY_DIGITS = 6

_RESIDUAL_FIELDS = (
    "symmetry",
    "re_part",
    "det_minus_one",
    "cholesky_ok",
    "square_condition",
    "lemma_consistency",
    "closed_form_delta",
    "genus2_identity",
)


def _float(value: Any) -> float:
    return float(format(float(value), f".{MACHINE_DIGITS}g"))


def matrix_to_list(matrix: Any) -> List[List[float]]:
    return [[_float(x) for x in row] for row in np.asarray(matrix)]


def _int_matrix(matrix: Any) -> List[List[int]]:
    return [[int(x) for x in row] for row in np.asarray(matrix)]


def _require(payload: Mapping[str, Any], kind: str) -> None:
    version = payload.get("schema_version")
    if version != SCHEMA_VERSION:
        raise PeriodicaError.validation_error(
            f"Unsupported schema_version {version!r}",
            "INVALID_REPORT",
            parameter_name="schema_version",
            value=version,
        )
    if payload.get("kind") != kind:
        raise PeriodicaError.validation_error(
            f"Expected a {kind!r} report, got {payload.get('kind')!r}",
            "INVALID_REPORT",
            parameter_name="kind",
            value=payload.get("kind"),
        )


def _header(kind: str, params: Optional[CurveParams]) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"schema_version": SCHEMA_VERSION, "kind": kind}
    if params is not None:
        payload.update(params.to_payload())
    return payload


def _params(payload: Mapping[str, Any]) -> CurveParams:
    return CurveParams(genus=int(payload["genus"]), a=tuple(float(x) for x in payload["a"]))


# residuals


def residuals_to_payload(report: ResidualReport) -> Dict[str, Any]:
    payload: Dict[str, Any] = {}
    for name in _RESIDUAL_FIELDS:
        value = getattr(report, name)
        if value is None:
            continue
        payload[name] = value if isinstance(value, bool) else _float(value)
    return payload


def residuals_from_payload(payload: Mapping[str, Any]) -> ResidualReport:
    return ResidualReport(
        symmetry=_number(payload["symmetry"]),
        re_part=_number(payload["re_part"]),
        det_minus_one=_number(payload["det_minus_one"]),
        cholesky_ok=bool(payload["cholesky_ok"]),
        square_condition=_number(payload["square_condition"]),
        lemma_consistency=_number(payload["lemma_consistency"]),
        closed_form_delta=_optional_float(payload, "closed_form_delta"),
        genus2_identity=_optional_float(payload, "genus2_identity"),
    )


def _optional_float(payload: Mapping[str, Any], name: str) -> Optional[float]:
    """Absent means not applicable; null is a residual that could not be computed."""

    return _number(payload[name]) if name in payload else None


def _number(value: Any) -> float:
    return math.inf if value is None else float(value)


# period


def period_to_payload(
    ps: PeriodSet, params: CurveParams, report: Optional[ResidualReport] = None
) -> Dict[str, Any]:
    payload = _header("period", params)
    payload.update(
        {
            "precision": ps.precision.value,
            "Pi0": matrix_to_list(ps.Pi0),
            "M": _int_matrix(ps.M),
            "N": _int_matrix(ps.N),
            "Pi_im": matrix_to_list(ps.Y),
            "nodes_total": ps.nodes_total,
        }
    )
    if report is not None:
        payload["residuals"] = residuals_to_payload(report)
    return payload


def period_from_payload(
    payload: Mapping[str, Any],
) -> Tuple[PeriodSet, CurveParams, Optional[ResidualReport]]:
    _require(payload, "period")
    params = _params(payload)
    ps = PeriodSet(
        genus=params.genus,
        Pi0=np.array(payload["Pi0"], dtype=float),
        M=np.array(payload["M"], dtype=int),
        N=np.array(payload["N"], dtype=int),
        Y=np.array(payload["Pi_im"], dtype=float),
        precision=parse_precision(payload["precision"]),
        nodes_total=int(payload["nodes_total"]),
    )
    residuals = payload.get("residuals")
    return ps, params, residuals_from_payload(residuals) if residuals is not None else None


# verify


def verify_to_payload(
    params: CurveParams,
    report: ResidualReport,
    failed: Mapping[str, float],
    gates: Mapping[str, float],
    precision: str,
) -> Dict[str, Any]:
    payload = _header("verify", params)
    payload.update(
        {
            "precision": precision,
            "residuals": residuals_to_payload(report),
            "gates": {name: _float(value) for name, value in gates.items()},
            "failed": sorted(failed),
            "passed": not failed,
        }
    )
    return payload


# polygon


def layout_to_payload(layout: PolygonLayout, params: Optional[CurveParams] = None) -> Dict[str, Any]:
    payload = _header("polygon", params)
    payload.update(
        {
            "genus": layout.genus,
            "rects": [
                {
                    "label": r.label,
                    "x": _float(r.x),
                    "y": _float(r.y),
                    "width": _float(r.width),
                    "height": _float(r.height),
                }
                for r in layout.rects
            ],
            "identifications": [
                [pair.first.label, pair.first.side, pair.second.label, pair.second.side]
                for pair in layout.identifications
            ],
            "marked_points": {
                name: [_float(x), _float(y)] for name, (x, y) in layout.marked_points.items()
            },
            "reflection_line": [[_float(x), _float(y)] for x, y in layout.reflection_line],
            "cylinders": [
                {"m": c.m, "direction": c.direction, "length": _float(c.length)}
                for c in layout.cylinders
            ],
            "interval_lengths": [_float(x) for x in layout.interval_lengths],
            "square": layout.is_square(),
            "square_defect": _float(layout.square_defect),
            "scale_note": layout.scale_note,
        }
    )
    if params is not None:
        images = marked_point_images(params)
        payload["marked_point_z"] = {name: _float(z) for name, z in images.items()}
    return payload


def layout_from_payload(payload: Mapping[str, Any]) -> PolygonLayout:
    _require(payload, "polygon")
    (ax, ay), (bx, by) = payload["reflection_line"]
    return PolygonLayout(
        genus=int(payload["genus"]),
        rects=[
            Rect(r["label"], float(r["x"]), float(r["y"]), float(r["width"]), float(r["height"]))
            for r in payload["rects"]
        ],
        identifications=[
            SidePair(SideRef(first, first_side), SideRef(second, second_side))
            for first, first_side, second, second_side in payload["identifications"]
        ],
        marked_points={name: (float(x), float(y)) for name, (x, y) in payload["marked_points"].items()},
        reflection_line=((float(ax), float(ay)), (float(bx), float(by))),
        cylinders=[Cylinder(int(c["m"]), c["direction"], float(c["length"])) for c in payload["cylinders"]],
        interval_lengths=[float(x) for x in payload["interval_lengths"]],
        scale_note=payload.get("scale_note", "c = 1"),
    )


# invert


def inversion_to_payload(result: InversionResult, genus: int, rho: Sequence[float]) -> Dict[str, Any]:
    payload = _header("invert", None)
    payload.update(
        {
            "genus": genus,
            "rho": [_float(x) for x in rho],
            "a": [_float(x) for x in result.a],
            "residual": _float(result.residual),
            "iterations": result.iterations,
            "trace": [record.to_payload() for record in result.trace],
        }
    )
    return payload


def inversion_from_payload(payload: Mapping[str, Any]) -> InversionResult:
    _require(payload, "invert")
    return InversionResult(
        a=tuple(float(x) for x in payload["a"]),
        residual=float(payload["residual"]),
        iterations=int(payload["iterations"]),
        trace=[
            IterationRecord(
                iteration=int(t["iteration"]),
                a=tuple(float(x) for x in t["a"]),
                residual=float(t["residual"]),
                step=float(t["step"]),
            )
            for t in payload["trace"]
        ],
    )


# text encodings


def _strict(value: Any) -> Any:
    """Replace non-finite floats by None, recursively."""

    if isinstance(value, float):
        return value if math.isfinite(value) else None
    if isinstance(value, Mapping):
        return {k: _strict(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_strict(v) for v in value]
    return value


def dumps(payload: Mapping[str, Any]) -> str:
    return json.dumps(_strict(payload), indent=2, allow_nan=False) + "\n"


def loads(text: str) -> Dict[str, Any]:
    try:
        payload = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PeriodicaError.validation_error(
            "Invalid report: not JSON", "INVALID_REPORT", reason=str(exc)
        ) from exc
    if not isinstance(payload, dict):
        raise PeriodicaError.validation_error("Invalid report: expected an object", "INVALID_REPORT")
    return payload


def matrix_to_csv(matrix: Any, name: str) -> str:
    """Row-major CSV with a single header line ``name_1,…,name_g``."""

    rows = np.asarray(matrix)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow([f"{name}_{k}" for k in range(1, rows.shape[1] + 1)])
    for row in rows:
        writer.writerow([format(float(x), f".{MACHINE_DIGITS}g") for x in row])
    return buffer.getvalue()


def csv_to_matrix(text: str) -> np.ndarray:
    reader = csv.reader(io.StringIO(text))
    next(reader)
    return np.array([[float(x) for x in row] for row in reader if row], dtype=float)


def payload_to_csv(payload: Mapping[str, Any]) -> str:
    """CSV rendering of a report: the main matrix, or one named row per record."""

    kind = payload.get("kind")
    if kind == "period":
        return matrix_to_csv(payload["Pi_im"], "Pi_im")
    if kind == "polygon":
        return _records_csv(["label", "x", "y", "width", "height"], payload["rects"])
    if kind == "invert":
        return _records_csv(["k", "a"], [{"k": k, "a": a} for k, a in enumerate(payload["a"], start=1)])
    flat = payload.get("residuals") or payload.get("calibration") or {}
    return _records_csv(["name", "value"], [{"name": k, "value": v} for k, v in flat.items()])


def _records_csv(columns: Sequence[str], records: Iterable[Mapping[str, Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for record in records:
        writer.writerow([_csv_cell(record[column]) for column in columns])
    return buffer.getvalue()


def _csv_cell(value: Any) -> str:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        return str(value)
    return format(value, f".{MACHINE_DIGITS}g")


def format_pretty(payload: Mapping[str, Any]) -> str:
    """Human-readable rendering with six significant digits."""

    lines: List[str] = []
    for key, value in payload.items():
        if key == "schema_version":
            continue
        if isinstance(value, list) and value and isinstance(value[0], list) and not isinstance(value[0][0], str):
            lines.append(f"{key}:")
            lines.extend("  " + "  ".join(_pretty(x).rjust(12) for x in row) for row in value)
        elif isinstance(value, dict):
            lines.append(f"{key}:")
            lines.extend(f"  {name}: {_pretty(item)}" for name, item in value.items())
        elif isinstance(value, list):
            lines.append(f"{key}: " + ", ".join(_pretty(x) for x in value))
        else:
            lines.append(f"{key}: {_pretty(value)}")
    return "\n".join(lines) + "\n"


def _pretty(value: Any) -> str:
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return format(value, f".{PRETTY_DIGITS}g")
    if isinstance(value, dict):
        return "{" + ", ".join(f"{k}={_pretty(v)}" for k, v in value.items()) + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(_pretty(x) for x in value) + "]"
    return str(value)
