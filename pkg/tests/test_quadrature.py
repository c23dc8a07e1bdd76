import math
import sys

import pytest

from fixtures import GRID
from periodica.curve import CurveParams, entry_table
from periodica.errors import PeriodicaError
from periodica.quadrature import (
    QuadratureConfig,
    calibration_integrals,
    entry_value,
    integrate_endpoint_singular,
    integrate_interval,
    oracle_integral,
    tail_integral,
    tail_truncation_oracle,
)
from periodica.types import Precision

CFG = QuadratureConfig()
CURVE = CurveParams(2, (2.0,))


def _rel(a, b):
    return abs(float(a) - float(b)) / max(abs(float(b)), 1.0)


def test_config_defaults_and_validation():
    assert CFG.target_rel_tol == 1e-12
    assert CFG.max_level == 12
    assert CFG.precision is Precision.STANDARD
    assert QuadratureConfig(precision="extended").precision is Precision.EXTENDED
    assert QuadratureConfig.for_precision("extended").target_rel_tol == 1e-30
    with pytest.raises(PeriodicaError):
        QuadratureConfig(target_rel_tol=0)
    with pytest.raises(PeriodicaError):
        QuadratureConfig(max_level=2)
    with pytest.raises(PeriodicaError):
        QuadratureConfig(workers=0)


def test_calibration_integrals_reproduce_pi():
    results = calibration_integrals(CFG)
    assert len(results) == 2
    for result in results.values():
        assert result.converged
        assert abs(result.value - math.pi) <= 1e-13


def test_calibration_integrals_extended():
    cfg = QuadratureConfig.for_precision(Precision.EXTENDED)
    for result in calibration_integrals(cfg).values():
        assert result.converged
        assert abs(result.value - cfg.arithmetic.pi) < 1e-28


def test_unit_interval_matches_oracle():
    result = integrate_endpoint_singular(CURVE, 1, 0.0, 1.0, CFG)
    oracle = oracle_integral(CURVE, 1, 0, CFG)
    assert result.converged and oracle.converged
    assert _rel(result.value, oracle.value) <= 1e-10
    assert result.abs_error_estimate <= CFG.target_rel_tol * max(abs(result.value), 1.0)


def test_second_power_on_middle_interval_is_minus_r():
    result = integrate_endpoint_singular(CURVE, 2, 1.0, 2.0, CFG)
    assert result.value > 0
    r = entry_value(CURVE, entry_table(CURVE)[2], CFG)
    assert r == -result.value
    assert _rel(result.value, oracle_integral(CURVE, 2, 1, CFG).value) <= 1e-10


def test_tail_closes_square_condition():
    i0 = integrate_interval(CURVE, 1, 0, CFG).value
    i1 = integrate_interval(CURVE, 1, 1, CFG).value
    i2 = tail_integral(CURVE, 1, CFG).value
    assert abs(i0 - i1 - i2) <= 1e-10 * i0


def test_tail_matches_truncation_oracle():
    tail = tail_integral(CURVE, 1, CFG)
    truncated = tail_truncation_oracle(CURVE, 1, CFG)
    assert truncated.converged
    assert _rel(tail.value, truncated.value) <= 1e-10


@pytest.mark.parametrize("params", [CurveParams(2, (2.0,)), CurveParams(4, (1.5, 3.0, 10.0))])
def test_tail_with_slowest_power_converges(params):
    result = tail_integral(params, params.genus, CFG)
    assert result.converged
    assert math.isfinite(result.value) and result.value > 0


def test_entry_signs_genus_two_and_three():
    table = entry_table(CURVE)
    by_jk = {(e.j, e.k): e for e in table}
    assert entry_value(CURVE, by_jk[(1, 2)], CFG) > 0
    assert entry_value(CURVE, by_jk[(2, 1)], CFG) < 0

    g3 = CurveParams(3, (2.0, 3.0))
    e = next(e for e in entry_table(g3) if (e.j, e.k) == (2, 2))
    assert entry_value(g3, e, CFG) < 0


def test_invalid_interval_and_power():
    with pytest.raises(PeriodicaError) as excinfo:
        integrate_endpoint_singular(CURVE, 1, 0.0, 2.0, CFG)
    assert excinfo.value.details["type"] == "INVALID_INTERVAL"
    with pytest.raises(PeriodicaError):
        integrate_endpoint_singular(CURVE, 3, 0.0, 1.0, CFG)
    with pytest.raises(PeriodicaError):
        tail_integral(CURVE, 0, CFG)


def test_non_convergence_is_reported_not_raised():
    cfg = QuadratureConfig(target_rel_tol=1e-14, max_level=3)
    result = integrate_endpoint_singular(CURVE, 1, 0.0, 1.0, cfg)
    assert not result.converged
    assert result.level == 3
    with pytest.raises(PeriodicaError) as excinfo:
        entry_value(CURVE, entry_table(CURVE)[1], cfg)
    assert excinfo.value.code == "QUADRATURE_NOT_CONVERGED"
    assert excinfo.value.details["k"] == 2


def test_raising_max_level_does_not_worsen_converged_result():
    low = integrate_endpoint_singular(CURVE, 1, 1.0, 2.0, QuadratureConfig(max_level=8))
    high = integrate_endpoint_singular(CURVE, 1, 1.0, 2.0, QuadratureConfig(max_level=12))
    assert low.converged and high.converged
    assert high.abs_error_estimate <= low.abs_error_estimate


def test_raw_integrals_are_positive():
    params = CurveParams(4, (2.0, 3.0, 4.0))
    for m in range(params.genus + 1):
        for j in range(1, params.genus + 1):
            assert integrate_interval(params, j, m, CFG).value > 0


def test_oracle_mode_uses_gauss_kronrod():
    cfg = QuadratureConfig(oracle_mode=True)
    primary = integrate_endpoint_singular(CURVE, 1, 1.0, 2.0, CFG)
    oracle = integrate_endpoint_singular(CURVE, 1, 1.0, 2.0, cfg)
    assert oracle.nodes_used % 15 == 0
    assert _rel(primary.value, oracle.value) <= 1e-10


@pytest.mark.parametrize("genus, a", GRID[:8])
def test_primary_matches_oracle_on_every_entry(genus, a):
    params = CurveParams(genus, a)
    for e in entry_table(params):
        primary = integrate_interval(params, e.j, e.m, CFG)
        oracle = oracle_integral(params, e.j, e.m, CFG)
        assert _rel(primary.value, oracle.value) <= 1e-10, (e, primary, oracle)


@pytest.mark.slow
@pytest.mark.parametrize("genus, a", GRID[8:])
def test_primary_matches_oracle_on_every_entry_wide_grid(genus, a):
    params = CurveParams(genus, a)
    for e in entry_table(params):
        primary = integrate_interval(params, e.j, e.m, CFG)
        oracle = oracle_integral(params, e.j, e.m, CFG)
        assert _rel(primary.value, oracle.value) <= 1e-10, (e, primary, oracle)


def test_extended_precision_agrees_with_standard():
    ext = QuadratureConfig.for_precision(Precision.EXTENDED)
    standard = integrate_interval(CURVE, 2, 2, CFG)
    extended = integrate_interval(CURVE, 2, 2, ext)
    assert extended.converged
    assert _rel(standard.value, extended.value) <= 1e-12


@pytest.mark.parametrize("tol", [1e-300, 1e-16, 2e-15])
def test_tolerance_below_working_precision_rejected(tol):
    with pytest.raises(PeriodicaError) as excinfo:
        QuadratureConfig(target_rel_tol=tol)
    assert excinfo.value.details["reason"] == "below_precision"
    assert excinfo.value.exit_code == 2


def test_extended_precision_admits_tighter_tolerance():
    assert QuadratureConfig.for_precision("extended", target_rel_tol=1e-35).target_rel_tol == 1e-35
    with pytest.raises(PeriodicaError):
        QuadratureConfig.for_precision("extended", target_rel_tol=1e-45)


def test_error_estimate_never_below_roundoff():
    result = integrate_endpoint_singular(CURVE, 1, 0.0, 1.0, QuadratureConfig(target_rel_tol=1e-14))
    assert result.converged
    assert result.abs_error_estimate >= sys.float_info.epsilon * abs(result.value)


@pytest.mark.parametrize("workers", ["two", None, 1.5, True])
def test_non_integer_workers_rejected(workers):
    with pytest.raises(PeriodicaError) as excinfo:
        QuadratureConfig(workers=workers)
    assert excinfo.value.details["parameter_name"] == "workers"
