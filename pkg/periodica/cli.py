"""Command-line front end: ``periodica {period,verify,polygon,invert,selftest}``."""
from __future__ import annotations

import argparse
import logging
import math
import os
import sys
import tempfile
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from . import serialization
from .client import Periodica, PeriodicaOptions
from .errors import EXIT_OK, PeriodicaError
from .linalg import inf_norm
from .periods import antidiagonal_flip, build_M, build_N, gamma_coeffs
from .precision import parse_precision, precision_from_env
from .quadrature import QuadratureConfig
from .types.precision import ALL_PRECISIONS
from .types.results import ModuliTarget, ResidualGates, SolverOptions

logger = logging.getLogger(__name__)

COMMANDS = ("period", "verify", "polygon", "invert", "selftest")
FORMATS = ("json", "csv", "pretty")
CALIBRATION_TOL = 1e-13
IDENTITY_GENERA = range(2, 13)


@dataclass(slots=True)
class RunConfig:
    command: str
    options: PeriodicaOptions
    output_format: str
    output: Optional[str] = None
    genus: Optional[int] = None
    a: Tuple[str, ...] = ()
    strict: bool = False


def _split(value: Optional[str]) -> Tuple[str, ...]:
    if value is None:
        return ()
    return tuple(part.strip() for part in value.split(",") if part.strip())


def _add_common(parser: argparse.ArgumentParser, curve: bool = True) -> None:
    if curve:
        parser.add_argument("--genus", type=int, help="genus g >= 2")
        parser.add_argument("--a", help="comma-separated branch parameters a1,...,a_{g-1}")
    parser.add_argument("--precision", choices=[p.value for p in ALL_PRECISIONS], help="working precision")
    parser.add_argument("--format", dest="output_format", choices=FORMATS, help="output format")
    parser.add_argument("--output", help="write the report to this path instead of standard output")
    parser.add_argument("--workers", type=int, default=1, help="threads for the quadrature of Pi0")
    parser.add_argument("--max-level", type=int, help="maximum tanh-sinh refinement level")
    parser.add_argument("--tol", type=float, help="target relative tolerance of each integral")
    parser.add_argument("--oracle", action="store_true", help="use the Gauss-Kronrod oracle scheme")
    parser.add_argument("-v", "--verbose", action="count", default=0)


def _add_gates(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol-sym", type=float, help="symmetry gate")
    parser.add_argument("--tol-det", type=float, help="|det Y - 1| gate")
    parser.add_argument("--tol-square", type=float, help="square-condition gate")
    parser.add_argument("--tol-closed", type=float, help="genus-2 closed-form gate")
    parser.add_argument("--tol-lemma", type=float, help="A/B/C consistency gate")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="periodica",
        description="Period matrices and staircase polygons of w^2 = z(z^2-1)(z^2-a1^2)...(z^2-a_{g-1}^2)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    period = sub.add_parser("period", help="compute the period matrix")
    _add_common(period)
    _add_gates(period)
    period.add_argument("--strict", action="store_true", help="exit 4 when a residual gate fails")

    verify = sub.add_parser("verify", help="check every residual gate")
    _add_common(verify)
    _add_gates(verify)

    poly = sub.add_parser("polygon", help="reconstruct the staircase polygon")
    _add_common(poly)
    poly.add_argument("--svg", help="also write the layout as SVG to this path")

    invert = sub.add_parser("invert", help="fit branch parameters to rectangle moduli")
    _add_common(invert)
    invert.add_argument("--rho", required=True, help="comma-separated aspect ratios rho_1,...,rho_{g-1}")
    invert.add_argument("--guess", help="comma-separated starting branch parameters")
    invert.add_argument("--max-iter", type=int, help="maximum Newton iterations")

    selftest = sub.add_parser("selftest", help="calibration integrals and integer identities")
    _add_common(selftest, curve=False)
    return parser


def configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity >= 2:
        level = logging.DEBUG
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")


def _gates(args: argparse.Namespace, base: ResidualGates) -> ResidualGates:
    overrides = {
        "symmetry": getattr(args, "tol_sym", None),
        "determinant": getattr(args, "tol_det", None),
        "square_condition": getattr(args, "tol_square", None),
        "closed_form": getattr(args, "tol_closed", None),
        "lemma_consistency": getattr(args, "tol_lemma", None),
    }
    return replace(base, **{name: value for name, value in overrides.items() if value is not None})


def run_config(args: argparse.Namespace, stream: Any = None) -> RunConfig:
    precision = parse_precision(args.precision) if args.precision else precision_from_env()
    settings: Dict[str, Any] = {"workers": args.workers, "oracle_mode": args.oracle}
    if args.max_level is not None:
        settings["max_level"] = args.max_level
    if args.tol is not None:
        settings["target_rel_tol"] = args.tol
    quadrature = QuadratureConfig.for_precision(precision, **settings)
    solver = SolverOptions()
    if getattr(args, "max_iter", None) is not None:
        solver = replace(solver, max_iterations=args.max_iter)
    options = PeriodicaOptions(
        precision=precision,
        quadrature=quadrature,
        gates=_gates(args, ResidualGates.for_precision(precision)),
        workers=args.workers,
        solver=solver,
    )

    output_format = args.output_format
    if output_format is None:
        stream = stream or sys.stdout
        interactive = args.output is None and hasattr(stream, "isatty") and stream.isatty()
        output_format = "pretty" if interactive else "json"
    return RunConfig(
        command=args.command,
        options=options,
        output_format=output_format,
        output=args.output,
        genus=getattr(args, "genus", None),
        a=_split(getattr(args, "a", None)),
        strict=getattr(args, "strict", False),
    )


def _gate_exit(failed: Mapping[str, float]) -> int:
    exc = PeriodicaError.gate_failure_error(failed)
    logger.error("%s: %s", exc.code, exc.message)
    return exc.exit_code


def _curve(app: Periodica, cfg: RunConfig):
    if cfg.genus is None:
        raise PeriodicaError.validation_error(
            "Missing --genus", "INVALID_GENUS", parameter_name="genus", reason="missing"
        )
    return app.curve(cfg.genus, cfg.a)


def cmd_period(cfg: RunConfig, args: argparse.Namespace, app: Periodica) -> Tuple[Dict[str, Any], int]:
    params = _curve(app, cfg)
    ps, report = app.period_with_residuals(params)
    payload = serialization.period_to_payload(ps, params, report)
    if cfg.strict:
        failed = report.failures(app.gates, scale=max(1.0, inf_norm(ps.Y)))
        if failed:
            return payload, _gate_exit(failed)
    return payload, EXIT_OK


def cmd_verify(cfg: RunConfig, args: argparse.Namespace, app: Periodica) -> Tuple[Dict[str, Any], int]:
    params = _curve(app, cfg)
    _, verification = app.verify(params)
    gates = {
        "symmetry": app.gates.symmetry,
        "determinant": app.gates.determinant,
        "square_condition": app.gates.square_condition,
        "closed_form": app.gates.closed_form,
        "lemma_consistency": app.gates.lemma_consistency,
    }
    payload = serialization.verify_to_payload(
        params, verification.report, verification.failed, gates, app.options.precision.value
    )
    if not verification.passed:
        return payload, _gate_exit(verification.failed)
    return payload, EXIT_OK


def cmd_polygon(cfg: RunConfig, args: argparse.Namespace, app: Periodica) -> Tuple[Dict[str, Any], int]:
    params = _curve(app, cfg)
    layout = app.polygon(params)
    if getattr(args, "svg", None):
        from .svg import layout_svg

        write_atomic(args.svg, layout_svg(layout))
    return serialization.layout_to_payload(layout, params), EXIT_OK


def cmd_invert(cfg: RunConfig, args: argparse.Namespace, app: Periodica) -> Tuple[Dict[str, Any], int]:
    rho = _split(args.rho)
    genus = cfg.genus if cfg.genus is not None else len(rho) + 1
    guess_values = _split(args.guess) if args.guess else tuple(str(k + 1) for k in range(1, genus))
    guess = app.curve(genus, guess_values)
    result = app.invert(ModuliTarget(rho=rho), guess)
    target = [float(x) for x in rho]
    return serialization.inversion_to_payload(result, genus, target), EXIT_OK


def identity_checks(genera: Sequence[int] = IDENTITY_GENERA) -> Dict[str, bool]:
    """Exact integer identities of M, N, J and the γ-coefficients."""

    checks = {"M_squared_identity": True, "N_entries": True, "J_T_equals_N": True, "T_unimodular": True}
    for g in genera:
        m = build_M(g)
        n = build_N(g)
        t = gamma_coeffs(g).T
        checks["M_squared_identity"] &= bool(np.array_equal(m @ m, np.eye(g, dtype=int)))
        checks["N_entries"] &= all(
            n[j - 1, k - 1] == ((-1) ** (g + 1 - j - k) if j + k <= g + 1 else 0)
            for j in range(1, g + 1)
            for k in range(1, g + 1)
        )
        checks["J_T_equals_N"] &= bool(np.array_equal(antidiagonal_flip(g) @ t, n))
        checks["T_unimodular"] &= bool(np.all(np.diag(t) == 1)) and bool(np.all(np.triu(t, 1) == 0))
    return checks


def cmd_selftest(cfg: RunConfig, args: argparse.Namespace, app: Periodica) -> Tuple[Dict[str, Any], int]:
    calibration = app.calibrate()
    errors = {name: abs(float(result.value) - math.pi) for name, result in calibration.items()}
    identities = identity_checks()
    passed = all(error <= CALIBRATION_TOL for error in errors.values()) and all(identities.values())
    payload = {
        "schema_version": serialization.SCHEMA_VERSION,
        "kind": "selftest",
        "precision": app.options.precision.value,
        "calibration": {name: float(result.value) for name, result in calibration.items()},
        "calibration_error": errors,
        "identities": identities,
        "passed": passed,
    }
    if not passed:
        failed = {name: error for name, error in errors.items() if error > CALIBRATION_TOL}
        failed.update({name: 0.0 for name, ok in identities.items() if not ok})
        return payload, _gate_exit(failed)
    return payload, EXIT_OK


HANDLERS: Mapping[str, Callable[[RunConfig, argparse.Namespace, Periodica], Tuple[Dict[str, Any], int]]] = {
    "period": cmd_period,
    "verify": cmd_verify,
    "polygon": cmd_polygon,
    "invert": cmd_invert,
    "selftest": cmd_selftest,
}


def render(payload: Mapping[str, Any], output_format: str) -> str:
    if output_format == "csv":
        return serialization.payload_to_csv(payload)
    if output_format == "pretty":
        return serialization.format_pretty(payload)
    return serialization.dumps(payload)


def write_atomic(path: str, text: str) -> None:
    """Write ``text`` to ``path`` through a temporary file in the same directory."""

    directory = os.path.dirname(os.path.abspath(path))
    try:
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".periodica-", suffix=".tmp")
    except OSError as exc:
        raise _unwritable(path, exc) from exc
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except OSError as exc:
        _discard(tmp)
        raise _unwritable(path, exc) from exc
    except BaseException:
        _discard(tmp)
        raise


def _discard(tmp: str) -> None:
    if os.path.exists(tmp):
        os.unlink(tmp)


def _unwritable(path: str, exc: OSError) -> PeriodicaError:
    return PeriodicaError.validation_error(
        f"Cannot write {path}: {exc.strerror or exc}",
        "OUTPUT_UNWRITABLE",
        parameter_name="path",
        value=path,
    )


def _error_payload(exc: PeriodicaError) -> Dict[str, Any]:
    return {
        "schema_version": serialization.SCHEMA_VERSION,
        "kind": "error",
        "code": exc.code,
        "message": exc.message,
        "details": _jsonable(exc.details or {}),
    }


def _jsonable(value: Any) -> Any:
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, int, str)) or value is None:
        return value
    try:
        return float(value)
    except (TypeError, ValueError):
        return str(value)


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    configure_logging(args.verbose)
    try:
        cfg = run_config(args)
        app = Periodica(cfg.options)
        payload, code = HANDLERS[cfg.command](cfg, args, app)
        text = render(payload, cfg.output_format)
        if cfg.output:
            write_atomic(cfg.output, text)
        else:
            sys.stdout.write(text)
    except PeriodicaError as exc:
        logger.error("%s: %s", exc.code, exc.message)
        sys.stderr.write(serialization.dumps(_error_payload(exc)))
        return exc.exit_code
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
