import logging
import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from periodica.curve import (
    CurveParams,
    column_interval,
    entry_table,
    f_eval,
    interval,
    intervals,
    marked_point_images,
    validate_params,
)
from periodica.errors import PeriodicaError
from periodica.precision import EXTENDED


def _reference_entry(g, j, k):
    """Four-case definition of I_{j,k}: (lower index, upper index, sign)."""

    if g % 2 == 0:
        if k <= g // 2:
            return g - 2 * k, g - 2 * k + 1, (-1) ** (j - 1)
        return 2 * k - g - 3, 2 * k - g - 2, 1
    if k <= (g + 1) // 2:
        return g - 2 * k, g - 2 * k + 1, (-1) ** (j - 1)
    return 2 * k - g - 3, 2 * k - g - 2, 1


def test_validate_params_accepts_reference_curves(caplog):
    with caplog.at_level(logging.WARNING, logger="periodica.curve"):
        params = validate_params(4, [2, 3, 4])
    assert params == CurveParams(genus=4, a=(2.0, 3.0, 4.0))
    assert not params.clustered
    assert not caplog.records


def test_validate_params_rejects_a_below_one():
    with pytest.raises(PeriodicaError) as excinfo:
        validate_params(2, [0.5])
    assert "a1 ≤ 1" in excinfo.value.message
    assert excinfo.value.exit_code == 2


@pytest.mark.parametrize(
    "genus, a",
    [
        (1, []),
        (2, []),
        (3, [2.0]),
        (3, [3.0, 2.0]),
        (3, [2.0, 2.0]),
        (2, [math.inf]),
        (2, [math.nan]),
        (2.5, [2.0]),
        (2, ["abc"]),
    ],
)
def test_validate_params_errors(genus, a):
    with pytest.raises(PeriodicaError) as excinfo:
        validate_params(genus, a)
    assert excinfo.value.code == "VALIDATION_ERROR"


def test_clustered_advisory(caplog):
    with caplog.at_level(logging.WARNING, logger="periodica.curve"):
        params = validate_params(3, [1.00001, 1.0001])
    assert params.clustered
    assert params.min_gap == pytest.approx(1e-5, rel=1e-6)
    assert "clustered" in caplog.text


def test_f_eval_examples():
    params = validate_params(2, [2])
    assert f_eval(params, 0) == 0
    assert f_eval(params, 1) == 0
    assert f_eval(params, 0.5) == pytest.approx(1.40625)


def test_f_eval_extended():
    params = validate_params(2, [2])
    value = f_eval(params, EXTENDED.num("0.5"), EXTENDED)
    assert abs(value - EXTENDED.num("1.40625")) < EXTENDED.num("1e-35")


@pytest.mark.parametrize("a", [(2.0,), (1.5, 3.0), (1.2, 2.0, 2.5), (1.1, 1.3, 4.0, 9.0)])
def test_f_sign_alternates_along_chain(a):
    params = CurveParams(genus=len(a) + 1, a=a)
    chain = params.breakpoints
    signs = [math.copysign(1.0, f_eval(params, (lo + hi) / 2)) for lo, hi in zip(chain, chain[1:])]
    assert all(s1 == -s2 for s1, s2 in zip(signs, signs[1:]))


def test_entry_table_reference_columns():
    g4 = entry_table(CurveParams(4, (2.0, 3.0, 4.0)))
    assert [e.m for e in g4 if e.j == 1] == [3, 1, 0, 2]

    g3 = entry_table(CurveParams(3, (2.0, 3.0)))
    assert [e.m for e in g3 if e.j == 1] == [2, 0, 1]
    assert [e.sign for e in g3 if e.j == 2] == [-1, -1, 1]

    first = entry_table(CurveParams(2, (2.0,)))[0]
    assert (first.j, first.k, first.m, first.sign) == (1, 1, 1, 1)


@pytest.mark.parametrize("g", range(2, 13))
def test_column_interval_is_bijection(g):
    assert sorted(column_interval(g, k) for k in range(1, g + 1)) == list(range(g))


@pytest.mark.parametrize("g", range(2, 13))
def test_entry_table_matches_four_case_definition(g):
    params = CurveParams(g, tuple(float(x) for x in range(2, g + 1)))
    table = entry_table(params)
    assert len(table) == g * g
    for e in table:
        lo, hi, sign = _reference_entry(g, e.j, e.k)
        assert hi == lo + 1
        assert e.m == hi
        assert e.sign == sign


@given(st.integers(min_value=2, max_value=40))
def test_column_interval_bijection_property(g):
    assert {column_interval(g, k) for k in range(1, g + 1)} == set(range(g))


def test_intervals_and_conventions():
    params = CurveParams(3, (2.0, 3.0))
    specs = intervals(params)
    assert [(s.lo, s.hi) for s in specs[:-1]] == [(0.0, 1.0), (1.0, 2.0), (2.0, 3.0)]
    assert specs[-1].is_tail and specs[-1].lo == 3.0
    with pytest.raises(ValueError):
        interval(params, 4)


def test_roots_and_marked_point_images():
    params = CurveParams(3, (2.0, 3.0))
    assert params.roots == (-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0)
    images = marked_point_images(params)
    assert images["p0"] == 0.0
    assert images["p3"] == 3.0 and images["q3"] == -3.0
    assert math.isinf(images["o"])


@given(
    st.lists(
        st.floats(min_value=1.01, max_value=1e6, allow_nan=False, allow_infinity=False),
        min_size=1,
        max_size=6,
        unique=True,
    )
)
def test_validate_params_accepts_sorted_values(values):
    values = sorted(values)
    if any(hi <= lo for lo, hi in zip(values, values[1:])):
        return
    params = validate_params(len(values) + 1, values)
    assert list(params.a) == values
