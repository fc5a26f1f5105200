"""
Tests for the ODE equivalence checks
"""
import math

import numpy as np
import pytest

from volterraheat.config import Settings
from volterraheat.errors import InvalidParameterError
from volterraheat.odecheck import (
    EquivalenceReport,
    ForcingForm,
    check_derivative_identities,
    check_initial_conditions,
    check_integral_bc,
    check_marching_identity,
    full_equivalence_report,
    integral_form_residual,
    ode_residual,
    ode_residual_sup,
)
from volterraheat.series import ModelParams, eval_y, eval_y_derivative, eval_y_grid
from volterraheat.volterra import GridFunction


def test_forcing_coefficients():
    """Half and unit forcing coefficients"""
    assert ForcingForm.HALF.coefficient(2.0) == pytest.approx(1.0 / math.sqrt(math.pi))
    assert ForcingForm.UNIT.coefficient(2.0) == pytest.approx(2.0 / math.sqrt(math.pi))
    assert ForcingForm("unit") is ForcingForm.UNIT


@pytest.mark.parametrize("t", [0.1, 1.0])
def test_residual_vanishes_at_zero_lambda(t):
    """At lambda = 0 both residuals vanish"""
    assert ode_residual(0.0, t) == 0.0
    assert ode_residual(0.0, t, forcing=ForcingForm.UNIT) == 0.0


@pytest.mark.parametrize("lam, t", [(1.0, 0.5), (-3.0, 1.0), (3.0, 2.0)])
def test_half_forcing_satisfies_ode(lam, t):
    """The series solution satisfies the ODE with half forcing"""
    assert abs(ode_residual(lam, t)) <= 1e-6


@pytest.mark.parametrize("lam, t", [(1.0, 0.1), (-3.0, 0.5), (3.0, 2.0)])
def test_unit_forcing_leaves_residual(lam, t):
    """Unit forcing leaves the missing half as residual"""
    missing = abs(lam) / (2.0 * math.sqrt(math.pi)) * t ** -1.5
    assert abs(ode_residual(lam, t, forcing=ForcingForm.UNIT)) >= missing * (1 - 1e-3)


@pytest.mark.parametrize("lam, t", [(1.0, 0.5), (-3.0, 1.0), (3.0, 2.0)])
def test_residual_does_not_grow_as_tolerance_tightens(lam, t):
    """Halving the series tolerance keeps the residual within twice the truncation noise"""
    scale = (
        abs(eval_y_derivative(lam, t, 3).value)
        + lam ** 2 * abs(eval_y(lam, t).value)
        + abs(lam) / (2.0 * math.sqrt(math.pi)) * t ** -1.5
    )
    for tol in (1e-6, 1e-8, 1e-10):
        coarse = abs(ode_residual(lam, t, tol))
        fine = abs(ode_residual(lam, t, tol / 2))
        assert fine <= coarse + 2.0 * tol * scale


def test_residual_rejects_origin():
    """The ODE is not evaluated at t = 0"""
    with pytest.raises(InvalidParameterError):
        ode_residual(1.0, 0.0)


def test_scaled_residual_sup():
    """The scaled residual separates the two forcing forms"""
    ts = np.geomspace(1e-3, 1.0, 32)
    assert ode_residual_sup(2.0, ts) <= 1e-8
    assert ode_residual_sup(2.0, ts, forcing=ForcingForm.UNIT) > 1e-3


def test_initial_conditions():
    """y(0) = 1, y'(0) = 0 and the regular part of y'' vanishes"""
    assert check_initial_conditions(0.0) == (0.0, 0.0, 0.0)
    y0, dy0, d2y0 = check_initial_conditions(2.0)
    assert y0 == 0.0
    assert dy0 <= 3 * 2.0 * math.sqrt(1e-6)
    assert d2y0 <= 1e-8 * 27


@pytest.mark.parametrize("lam", [-2.0, -1.0, 1.0, 2.0])
def test_integral_boundary_condition(lam):
    """y''(1) matches the integral condition"""
    assert check_integral_bc(lam, 1000) <= 1e-7


def test_integral_boundary_condition_rejects_coarse_grid():
    """The integral condition needs at least 100 steps"""
    assert check_integral_bc(0.0, 100) == 0.0
    with pytest.raises(InvalidParameterError):
        check_integral_bc(1.0, 50)


@pytest.mark.parametrize("lam", [-2.0, 1.0])
def test_derivative_identities(lam):
    """y' and y'' match their integral identities"""
    first, second = check_derivative_identities(lam, np.linspace(0.05, 1.0, 16))
    assert first <= 1e-6
    assert second <= 1e-6


def test_derivative_identities_reject_origin():
    """Identities vanish at lambda = 0 and need positive points"""
    assert check_derivative_identities(0.0, [0.5, 1.0]) == (0.0, 0.0)
    with pytest.raises(InvalidParameterError):
        check_derivative_identities(1.0, [0.0, 1.0])
    with pytest.raises(InvalidParameterError):
        check_derivative_identities(1.0, [])


def test_integral_form_residual():
    """The series solves the twice-integrated ODE"""
    lam = 1.5
    series = GridFunction.from_function(lambda ts: eval_y_grid(lam, ts), 1.0, 400)
    assert np.max(np.abs(integral_form_residual(series, lam).values)) <= 1e-7
    ones = GridFunction(dt=0.5, values=np.ones(3))
    np.testing.assert_array_equal(integral_form_residual(ones, 0.0).values, np.zeros(3))
    with pytest.raises(InvalidParameterError):
        integral_form_residual(GridFunction(dt=0.5, values=[1.0, 1.0]), 0.0)


@pytest.mark.parametrize("lam", [-2.0, 1.0, 3.0])
def test_marching_identity(lam):
    """The marching solution satisfies the integrated ODE to O(dt^2)"""
    steps = 500
    dt = 1.0 / steps
    assert check_marching_identity(lam, 1.0, steps) <= 10 * dt ** 2 * (1 + abs(lam)) ** 3


def test_marching_identity_converges():
    """The integrated-ODE defect shrinks with refinement"""
    coarse = check_marching_identity(2.0, 1.0, 250)
    fine = check_marching_identity(2.0, 1.0, 1000)
    assert fine < coarse


def test_report_at_zero_lambda():
    """Every measurement is zero at lambda = 0"""
    report = full_equivalence_report(ModelParams(lam=0.0), steps=200)
    assert isinstance(report, EquivalenceReport)
    assert all(value == 0.0 for value in report.measurements().values())
    assert report.passed


@pytest.mark.parametrize("lam, t_max", [(1.0, 1.0), (-4.0, 0.5), (2.0, 1.5)])
def test_report_passes(lam, t_max):
    """Equivalence reports pass for admissible parameters"""
    report = full_equivalence_report(ModelParams(lam=lam, t_max=t_max), steps=1000)
    failed = [r.message for r in report.results if not r.passed]
    assert report.passed, failed
    assert len(report.results) == len(EquivalenceReport.MEASUREMENTS)


def test_report_with_unit_forcing_fails_ode_check():
    """Only the ODE check fails with unit forcing"""
    report = full_equivalence_report(ModelParams(lam=1.0), steps=200, forcing=ForcingForm.UNIT)
    assert not report.passed
    failed = {r.check_id for r in report.results if not r.passed}
    assert failed == {"ode-residual"}
    assert report.to_dict()["forcing"] == "unit"


def test_report_dictionary_layout():
    """Report dictionary keys and nested blocks"""
    report = full_equivalence_report(ModelParams(lam=0.5), steps=200)
    data = report.to_dict()
    assert list(data)[:5] == ["lambda", "t_max", "steps", "forcing", "pass"]
    for name in EquivalenceReport.MEASUREMENTS:
        assert name in data
    assert data["grid"]["steps"] == 200
    assert data["tolerances"]["initial-value"] == 0.0
    assert len(data["checks"]) == len(EquivalenceReport.MEASUREMENTS)


def test_settings_can_disable_and_tighten_checks():
    """Settings disable and retune equivalence checks"""
    settings = Settings()
    settings.disable_check("marching-identity")
    settings.set_check_config("ode-residual", {"tolerance": 0.0})
    report = full_equivalence_report(ModelParams(lam=1.0), steps=200, settings=settings)
    ids = [r.check_id for r in report.results]
    assert "marching-identity" not in ids
    ode = next(r for r in report.results if r.check_id == "ode-residual")
    assert ode.bound == 0.0
