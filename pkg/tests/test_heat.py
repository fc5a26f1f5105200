"""
Tests for the temperature field, its potential and the boundary flux
"""
import math

import numpy as np
import pytest
from scipy.integrate import quad

from volterraheat.errors import InvalidParameterError
from volterraheat.heat import (
    WEIGHT_CACHE_SIZE,
    HeatSample,
    HeatSolution,
    eval_flux0,
    eval_U,
    eval_u,
    pde_residual,
)
from volterraheat.series import eval_flux_series, eval_U_series, eval_y
from volterraheat.specfun import erf


@pytest.mark.parametrize("lam", [-2.0, 1.0])
@pytest.mark.parametrize("t", [0.1, 1.0])
def test_boundary_value(lam, t):
    """u(0, t) = 0"""
    assert abs(eval_u(lam, 1.0, 0.0, t)) <= 1e-12


@pytest.mark.parametrize("x, t", [(0.0, 0.5), (0.3, 0.2), (2.0, 1.0)])
def test_zero_lambda_is_error_function(x, t):
    """Without memory the temperature is h0 erf(x / 2 sqrt(t))"""
    assert eval_u(0.0, 2.0, x, t) == pytest.approx(2.0 * erf(x / (2 * math.sqrt(t))), abs=1e-12)


def test_far_field_at_small_time():
    """Far from the boundary u stays at h0 for small t"""
    assert eval_u(0.5, 1.0, 1.0, 1e-6) == pytest.approx(1.0, abs=1e-9)


def test_initial_data_is_approached():
    """At fixed x the temperature approaches h0 as t decreases"""
    gaps = [abs(eval_u(1.0, 1.0, 1.0, t) - 1.0) for t in (1e-2, 1e-3, 1e-4)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_linear_in_initial_temperature():
    """u is linear in h0"""
    assert eval_u(1.3, 2.0, 0.7, 0.4) == pytest.approx(2.0 * eval_u(1.3, 1.0, 0.7, 0.4), rel=1e-12)


def test_temperature_accepts_arrays():
    """Vector and sweep evaluation agree with scalar evaluation"""
    solution = HeatSolution(-1.0, 1.5)
    xs = np.array([0.0, 0.5, 1.0])
    values = solution.temperature(xs, 0.5)
    assert values.shape == (3,)
    for x, value in zip(xs, values):
        assert value == pytest.approx(solution.temperature(float(x), 0.5), rel=1e-14, abs=1e-15)
    grid = solution.sweep(xs, np.array([0.25, 0.5]))
    assert grid.shape == (2, 3)
    np.testing.assert_allclose(grid[1], values, rtol=1e-14, atol=1e-15)


def test_weight_cache_is_bounded():
    """Long sweeps keep at most WEIGHT_CACHE_SIZE weight vectors and reuse them"""
    solution = HeatSolution(1.0, 1.0, panels=2, order=4)
    ts = np.linspace(0.01, 1.0, WEIGHT_CACHE_SIZE + 50)
    grid = solution.sweep(np.array([0.0, 0.5]), ts)
    info = solution._memory_weights.cache_info()
    assert info.currsize == WEIGHT_CACHE_SIZE
    assert info.misses == ts.size
    assert solution.temperature(0.5, float(ts[-1])) == pytest.approx(grid[-1, 1], rel=1e-14, abs=1e-15)
    assert solution._memory_weights.cache_info().hits == info.hits + 1


@pytest.mark.parametrize("args", [(-0.1, 1.0), (1.0, 0.0), (math.inf, 1.0)])
def test_temperature_rejects_bad_points(args):
    """Negative, infinite or zero-time points are rejected"""
    with pytest.raises(InvalidParameterError):
        HeatSolution(1.0).temperature(*args)


def test_memory_integral_matches_potential():
    """The theta-rule potential matches the U series"""
    solution = HeatSolution(1.2, 2.0)
    for t in (0.2, 1.0):
        assert solution.memory(t) == pytest.approx(eval_U_series(1.2, 2.0, t).value, rel=1e-9)


def test_potential_grid_at_zero_lambda():
    """The grid potential is h0 times 2 sqrt(t / pi) without memory"""
    U = eval_U(0.0, 3.0, 1.0, 100)
    assert U.values[0] == 0.0
    np.testing.assert_allclose(U.values[1:], 6.0 * np.sqrt(U.times[1:] / math.pi), rtol=1e-12)


def test_potential_grid_matches_quadrature():
    """The grid potential agrees with adaptive quadrature"""
    lam = 1.0
    U = eval_U(lam, 1.0, 1.0, 2000)
    # tau = 1 - s^2 removes the kernel singularity
    exact, _ = quad(lambda s: 2.0 * eval_y(lam, 1.0 - s * s).value, 0.0, 1.0, epsabs=1e-13)
    assert U.values[-1] == pytest.approx(exact / math.sqrt(math.pi), abs=1e-6)


@pytest.mark.parametrize("lam", [-1.5, 2.0])
def test_potential_grid_matches_series(lam):
    """The grid potential agrees with the U series"""
    U = eval_U(lam, 1.0, 1.0, 2000)
    series = HeatSolution(lam).potential(U.times)
    assert np.max(np.abs(U.values - series)) <= 1e-6


def test_flux_at_zero_lambda():
    """The boundary flux is h0 / sqrt(pi t) without memory"""
    assert eval_flux0(0.0, 2.0, 0.5) == pytest.approx(2.0 / math.sqrt(0.5 * math.pi), rel=1e-15)


@pytest.mark.parametrize("lam", [-1.0, 1.0])
def test_flux_matches_series(lam):
    """Simpson and series boundary fluxes agree"""
    for t in (0.1, 1.0):
        assert eval_flux0(lam, 1.0, t) == pytest.approx(eval_flux_series(lam, 1.0, t).value, abs=1e-8)
    np.testing.assert_allclose(
        HeatSolution(lam).flux0(np.array([0.1, 1.0])),
        [eval_flux_series(lam, 1.0, 0.1).value, eval_flux_series(lam, 1.0, 1.0).value],
        rtol=1e-10,
        atol=1e-11,
    )


def test_flux_is_derivative_of_potential():
    """The flux equals the time derivative of U"""
    lam, h = 0.8, 1e-5
    for t in np.linspace(0.1, 1.0, 5):
        fd = (eval_U_series(lam, 1.0, t + h).value - eval_U_series(lam, 1.0, t - h).value) / (2 * h)
        assert eval_flux0(lam, 1.0, t) == pytest.approx(fd, abs=1e-6)


def test_flux_rejects_origin():
    """The flux is undefined at t = 0"""
    with pytest.raises(InvalidParameterError):
        eval_flux0(1.0, 1.0, 0.0)
    with pytest.raises(InvalidParameterError):
        HeatSolution(1.0).flux0(np.array([0.0, 1.0]))


def test_pde_residual_at_zero_lambda():
    """The finite-difference defect is small without memory"""
    assert abs(pde_residual(0.0, 1.0, 1.0, 0.5)) <= 1e-5


@pytest.mark.parametrize("lam, x, t", [(1.0, 1.0, 0.5), (-2.0, 0.5, 0.25)])
def test_pde_residual_is_second_order(lam, x, t):
    """Halving the steps divides the PDE defect by about four"""
    coarse = pde_residual(lam, 1.0, x, t, dx=1e-3, dt_fd=1e-3)
    fine = pde_residual(lam, 1.0, x, t, dx=5e-4, dt_fd=5e-4)
    assert abs(coarse) <= 1e-3 * (1 + abs(lam))
    assert abs(coarse) / abs(fine) >= 3.5


def test_pde_residual_needs_room_for_differences():
    """Differences must stay inside the domain"""
    with pytest.raises(InvalidParameterError):
        pde_residual(1.0, 1.0, 5e-4, 0.5)
    with pytest.raises(InvalidParameterError):
        pde_residual(1.0, 1.0, 1.0, 1e-3)


def test_sample():
    """HeatSample carries the boundary flux only at x = 0"""
    solution = HeatSolution(1.0)
    boundary = solution.sample(0.0, 0.5)
    assert isinstance(boundary, HeatSample)
    assert boundary.flux0 == pytest.approx(eval_flux_series(1.0, 1.0, 0.5).value, abs=1e-11)
    assert solution.sample(1.0, 0.5).flux0 is None
    with pytest.raises(InvalidParameterError):
        HeatSample(x=-1.0, t=1.0, u=0.0)


def test_invalid_quadrature_and_temperature():
    """Invalid quadrature sizes and h0 are rejected"""
    with pytest.raises(InvalidParameterError):
        HeatSolution(1.0, panels=0)
    with pytest.raises(InvalidParameterError):
        HeatSolution(1.0, h0=0.0)
