"""
Tests for the admissible parameter range and the dependence bounds
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from volterraheat import bounds
from volterraheat.config import Settings
from volterraheat.errors import InvalidParameterError
from volterraheat.series import ModelParams, eval_y_grid
from volterraheat.volterra import GridFunction


def test_lambda_threshold_values():
    """Admissible lambda range at known (epsilon, T)"""
    assert bounds.lambda_threshold(0.5, 1.0) == pytest.approx(3 * math.sqrt(math.pi) / 8, rel=1e-15)
    assert bounds.lambda_threshold(0.9, 0.25) == pytest.approx(9.5713, abs=1e-3)


@given(
    st.floats(min_value=0.01, max_value=0.99),
    st.floats(min_value=0.05, max_value=5.0),
)
@settings(max_examples=50)
def test_lambda_threshold_scaling(epsilon, t_max):
    """The threshold scales as epsilon / T^(3/2)"""
    base = bounds.lambda_threshold(epsilon, t_max)
    assert bounds.lambda_threshold(epsilon, 4 * t_max) == pytest.approx(base / 8, rel=1e-13)
    assert base / epsilon == pytest.approx(bounds.lambda_threshold(0.5, t_max) / 0.5, rel=1e-13)


@pytest.mark.parametrize("epsilon, t_max", [(0.0, 1.0), (1.0, 1.0), (0.5, 0.0), (0.5, math.inf)])
def test_lambda_threshold_rejects_bad_range(epsilon, t_max):
    """epsilon outside (0, 1) or nonpositive T is rejected"""
    with pytest.raises(InvalidParameterError):
        bounds.lambda_threshold(epsilon, t_max)


def test_lambda_samples():
    """Samples run from minus to plus the threshold through 0"""
    lams = bounds.lambda_samples(0.5, 1.0, 9)
    threshold = bounds.lambda_threshold(0.5, 1.0)
    assert lams[0] == -threshold
    assert lams[-1] == threshold
    assert lams[4] == 0.0
    with pytest.raises(InvalidParameterError):
        bounds.lambda_samples(0.5, 1.0, 1)


def test_sup_norm():
    """Largest absolute value of arrays and grid functions; empty input is rejected"""
    assert bounds.sup_norm(np.array([0.5, -2.0, 1.0])) == 2.0
    assert bounds.sup_norm(GridFunction(dt=0.1, values=[1.0, -3.0])) == 3.0
    with pytest.raises(InvalidParameterError):
        bounds.sup_norm(np.array([]))


def test_bound_formulas():
    """Bound formulas at hand-computed values"""
    assert bounds.g_norm_bound(0.5) == 2.0
    assert bounds.g_lipschitz_bound(0.25, 2.0) == pytest.approx(3.7826, abs=1e-3)
    assert bounds.U_norm_bound(0.5, 1.0, 1.0) == pytest.approx(4 / math.sqrt(math.pi), rel=1e-15)
    assert bounds.U_lipschitz_bound(0.5, 1.0, 2.0) == pytest.approx(64 / (3 * math.pi), rel=1e-15)
    assert bounds.u_norm_bound(0.5, 2.0) == 5.0
    assert bounds.u_dev_bound(0.5, 1.0, 1.0) == pytest.approx(4 / math.sqrt(math.pi), rel=1e-15)
    assert bounds.u_lipschitz_bound(0.5, 1.0, 1.0) == pytest.approx(
        4 / math.sqrt(math.pi) * (math.pi + 1), rel=1e-15
    )


def test_norm_grows_with_negative_lambda():
    """max |g| increases as lambda decreases below 0"""
    ts = np.linspace(0.0, 1.0, 257)
    lams = bounds.lambda_samples(0.5, 1.0, 9)[:5][::-1]
    norms = [bounds.sup_norm(eval_y_grid(lam, ts)) for lam in lams]
    assert all(b >= a for a, b in zip(norms, norms[1:]))


def test_solution_bounds():
    """max |g| and its Lipschitz ratio respect their bounds"""
    report = bounds.verify_solution_bounds(0.5, 1.0, 9, steps=256)
    assert report.passed
    assert 1.0 <= report.g_norm_measured <= report.g_norm_bound
    assert 0 < report.g_lipschitz_measured <= report.g_lipschitz_bound
    assert report.U_norm_measured is None
    assert report.details["g_norm"]["lambda"] == pytest.approx(-report.lambda_threshold)
    assert {r.check_id for r in report.results} == {"g-norm", "g-lipschitz"}


def _small_heat(h0, **kwargs):
    return bounds.verify_heat_bounds(
        0.5, 1.0, h0, n_lambda_samples=5, steps=64,
        x_grid=np.linspace(0.0, 8.0, 17), u_time_points=8, **kwargs,
    )


def test_heat_bounds():
    """U and u respect their bounds on a small grid"""
    report = _small_heat(1.0)
    assert report.passed, [r.message for r in report.results if not r.passed]
    assert report.g_norm_measured is None
    assert report.U_norm_measured <= report.U_norm_bound
    assert report.u_norm_measured <= report.u_norm_bound
    assert 0 < report.u_dev_measured <= report.u_dev_bound
    assert 0 < report.u_lipschitz_measured <= report.u_lipschitz_bound


def test_heat_measurements_scale_with_initial_temperature():
    """Doubling h0 doubles the measured heat norms"""
    single, double = _small_heat(1.0), _small_heat(2.0)
    for name in ("U_norm", "U_lipschitz", "u_norm", "u_dev", "u_lipschitz"):
        assert getattr(double, f"{name}_measured") == pytest.approx(
            2 * getattr(single, f"{name}_measured"), rel=1e-12
        )
        assert getattr(double, f"{name}_bound") == pytest.approx(2 * getattr(single, f"{name}_bound"), rel=1e-15)


def test_heat_bounds_reject_bad_input():
    """Invalid h0 and spatial grids are rejected"""
    with pytest.raises(InvalidParameterError):
        bounds.verify_heat_bounds(0.5, 1.0, h0=0.0)
    with pytest.raises(InvalidParameterError):
        bounds.verify_heat_bounds(0.5, 1.0, x_grid=[-1.0, 1.0])


def test_workers_do_not_change_results():
    """Threaded evaluation gives the same report as serial"""
    serial = bounds.verify_solution_bounds(0.5, 1.0, 5, steps=64, settings=Settings(workers=1))
    threaded = bounds.verify_solution_bounds(0.5, 1.0, 5, steps=64, settings=Settings(workers=3))
    assert serial.to_dict() == threaded.to_dict()


def test_bounds_report_merges_everything():
    """The combined report carries all seven dependence checks"""
    settings = Settings(t_max=1.0, grid_points=64, lambda_samples=3, x_points=9, u_time_points=4)
    report = bounds.bounds_report(ModelParams(lam=0.0, epsilon=0.5), settings)
    data = report.to_dict()
    assert data["pass"] is True
    for quantity in bounds.BoundsReport.QUANTITIES:
        assert f"{quantity}_bound" in data
        assert f"{quantity}_measured" in data
    assert len(data["checks"]) == 7
    assert data["lambda_samples"][1] == 0.0


def test_slack_is_configurable():
    """A negative slack makes exactly the tightened check fail"""
    settings = Settings()
    settings.set_check_config("g-norm", {"slack": -10.0})
    report = bounds.verify_solution_bounds(0.5, 1.0, 3, steps=32, settings=settings)
    assert not report.passed
    assert [r.check_id for r in report.results if not r.passed] == ["g-norm"]
