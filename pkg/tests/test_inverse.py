import math

import pytest

from fixtures import GRID
from periodica.curve import CurveParams
from periodica.errors import PeriodicaError
from periodica.inverse import invert_moduli, project
from periodica.polygon import forward_moduli
from periodica.quadrature import QuadratureConfig
from periodica.types import ModuliTarget, SolverOptions

CFG = QuadratureConfig()


class RecordingForward:
    """Smooth synthetic moduli map ρ_k = log(a_k) · a_k / a_{k−1} with a₀ = 1."""

    def __init__(self):
        self.calls = []

    def __call__(self, a):
        self.calls.append(tuple(a))
        chain = (1.0,) + tuple(a)
        return tuple(math.log(chain[k]) * chain[k] / chain[k - 1] for k in range(1, len(chain)))


def test_projection_keeps_ordering():
    previous = (2.0, 3.0, 4.0)
    assert project(previous, (0.5, 3.5, 10.0)) == (1.5, 3.5, 10.0)
    assert project(previous, (2.5, 1.0, 4.5)) == (2.5, 2.5, 4.5)


def test_synthetic_round_trip():
    forward = RecordingForward()
    truth = (1.8, 2.7, 5.0)
    target = ModuliTarget(rho=forward(truth))
    result = invert_moduli(4, target, CurveParams(4, (1.5, 2.5, 3.5)), forward=forward)
    assert result.residual <= 1e-8
    assert max(abs(x - y) for x, y in zip(result.a, truth)) / max(truth) <= 1e-6
    assert result.iterations <= 25
    assert [record.iteration for record in result.trace] == list(range(result.iterations + 1))


def test_fixed_point_needs_no_iteration():
    params = CurveParams(2, (2.0,))
    target = ModuliTarget(rho=forward_moduli(params, CFG))
    result = invert_moduli(2, target, params, cfg=CFG)
    assert result.iterations <= 1
    assert result.a == pytest.approx((2.0,), rel=1e-9)


def _shifted_guess(truth):
    """Move each a_k a quarter of the way toward its lower neighbour, keeping the ordering."""

    chain = (1.0,) + tuple(truth)
    return tuple(chain[k] - 0.25 * (chain[k] - chain[k - 1]) for k in range(1, len(chain)))


def _grid_params():
    return [
        pytest.param(genus, a, marks=pytest.mark.slow) if genus >= 5 else (genus, a) for genus, a in GRID
    ]


@pytest.mark.parametrize("genus, truth", _grid_params())
def test_round_trip_over_grid(genus, truth):
    rho = forward_moduli(CurveParams(genus, truth), CFG)
    guess = CurveParams(genus, _shifted_guess(truth))
    result = invert_moduli(genus, ModuliTarget(rho=rho), guess, cfg=CFG)
    assert max(abs(x - y) / y for x, y in zip(result.a, truth)) <= 1e-6
    assert result.iterations <= 25


def test_invalid_target_rejected():
    with pytest.raises(PeriodicaError) as excinfo:
        invert_moduli(2, ModuliTarget(rho=(-1.0,)), CurveParams(2, (2.0,)), forward=RecordingForward())
    assert excinfo.value.exit_code == 2
    with pytest.raises(PeriodicaError):
        invert_moduli(3, ModuliTarget(rho=(1.0, 1.0)), CurveParams(2, (2.0,)), forward=RecordingForward())


def test_singular_jacobian():
    with pytest.raises(PeriodicaError) as excinfo:
        invert_moduli(
            3,
            ModuliTarget(rho=(1.0, 2.0)),
            CurveParams(3, (2.0, 3.0)),
            forward=lambda a: (0.5, 0.5),
        )
    assert excinfo.value.code == "SOLVER_SINGULAR_JACOBIAN"
    assert excinfo.value.details["trace"][0]["iteration"] == 0


def test_max_iterations():
    with pytest.raises(PeriodicaError) as excinfo:
        invert_moduli(
            2,
            ModuliTarget(rho=(27.0,)),
            CurveParams(2, (2.0,)),
            opts=SolverOptions(max_iterations=1),
            forward=lambda a: (a[0] ** 3,),
        )
    assert excinfo.value.code == "SOLVER_MAX_ITERATIONS"
    assert len(excinfo.value.details["trace"]) == 2


def test_infeasible_target_fails_with_trace():
    with pytest.raises(PeriodicaError) as excinfo:
        invert_moduli(
            2,
            ModuliTarget(rho=(0.5,)),
            CurveParams(2, (2.0,)),
            forward=lambda a: ((a[0] - 3.0) ** 2 + 1.0,),
        )
    assert excinfo.value.exit_code == 3
    assert excinfo.value.details["trace"]
