"""
Tests for the series solution and its derivatives
"""
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from pydantic import ValidationError

from volterraheat.config import TERM_CAP_ENV
from volterraheat.errors import InvalidParameterError, TermCapExceededError
from volterraheat.series import (
    ModelParams,
    adomian_partial_sum,
    eval_flux_series,
    eval_I,
    eval_I_closed_form,
    eval_J,
    eval_U_series,
    eval_y,
    eval_y_derivative,
    eval_y_grid,
    potential_parts,
    tabulate_solution,
)

lambdas = st.floats(min_value=-5.0, max_value=5.0, allow_nan=False)
times = st.floats(min_value=0.0, max_value=1.5, allow_nan=False)


@pytest.mark.parametrize("lam", [-3.0, -0.5, 0.0, 2.5, 7.0])
def test_initial_value_is_exact(lam):
    """y(0) = 1 exactly"""
    assert eval_y(lam, 0.0).value == 1.0


@pytest.mark.parametrize("t", [0.0, 0.5, 3.0])
def test_zero_lambda_gives_one(t):
    """y = 1 when lambda = 0"""
    assert eval_y(0.0, t).value == 1.0
    assert eval_J(0.0, t).value == 0.0


@pytest.mark.parametrize("lam", [-2.0, 0.5, 1.0, 3.0])
@pytest.mark.parametrize("t", [0.3, 1.0, 1.5])
def test_I_matches_closed_form(lam, t):
    """I agrees with its exponential closed form"""
    assert eval_I(lam, t).value == pytest.approx(eval_I_closed_form(lam, t), rel=1e-10)


def test_I_closed_form_at_zero_lambda():
    """The closed form of I is 1 at lambda = 0"""
    assert eval_I_closed_form(0.0, 2.0) == pytest.approx(1.0, rel=1e-15)


def test_J_leading_term():
    """J starts with its t^(3/2) term"""
    t = 1e-4
    expected = 2 ** 1.5 * t ** 1.5 / 3.0
    assert eval_J(1.0, t).value == pytest.approx(expected, rel=1e-9)


@pytest.mark.parametrize("lam", [-1.0, 1.0, 2.0])
@pytest.mark.parametrize("t", [0.5, 1.0])
def test_adomian_form_agrees(lam, t):
    """The Adomian series sums to y"""
    assert adomian_partial_sum(lam, t, 80) == pytest.approx(eval_y(lam, t).value, rel=1e-10, abs=1e-11)


def test_adomian_partial_sum_first_terms():
    """First Adomian partial sums at hand-computed values"""
    assert adomian_partial_sum(2.0, 0.7, 1) == 1.0
    np.testing.assert_allclose(
        adomian_partial_sum(1.0, np.array([0.0, 1.0]), 2),
        [1.0, 1.0 - 4.0 / (3.0 * math.sqrt(math.pi))],
        rtol=1e-14,
    )
    with pytest.raises(InvalidParameterError):
        adomian_partial_sum(1.0, 1.0, 0)


@given(lambdas, times)
@settings(max_examples=60, deadline=None)
def test_I_is_even_and_J_is_odd_in_lambda(lam, t):
    """I is even and J is odd in lambda"""
    assert eval_I(lam, t).value == eval_I(-lam, t).value
    assert eval_J(-lam, t).value == -eval_J(lam, t).value


def test_evaluation_carries_truncation_proxy():
    """The last term stays below the tolerance"""
    result = eval_y(1.0, 1.0)
    assert result.terms_used > 3
    assert 0 <= result.last_term_magnitude < 1e-9
    assert set(result.to_dict()) == {"value", "terms_used", "last_term_magnitude"}


@pytest.mark.parametrize("lam", [-2.0, 1.0])
@pytest.mark.parametrize("order", [1, 2, 3])
def test_derivatives_match_finite_differences(lam, order):
    """Termwise derivatives agree with finite differences"""
    t, h, tol = 0.7, 1e-4, 1e-14

    def lower_order(s):
        return eval_y_derivative(lam, s, order - 1, tol).value if order > 1 else eval_y(lam, s, tol).value

    fd = (lower_order(t + h) - lower_order(t - h)) / (2 * h)
    assert eval_y_derivative(lam, t, order, tol).value == pytest.approx(fd, rel=1e-6)


def test_first_derivative_at_origin():
    """y'(0) = 0"""
    assert eval_y_derivative(2.0, 0.0, 1).value == 0.0


@pytest.mark.parametrize("order", [2, 3])
def test_higher_derivatives_are_singular_at_origin(order):
    """y'' and y''' are not evaluated at t = 0"""
    with pytest.raises(InvalidParameterError):
        eval_y_derivative(1.0, 0.0, order)
    with pytest.raises(InvalidParameterError):
        eval_y_grid(1.0, np.array([0.0, 0.5]), order=order)


def test_second_derivative_singular_part():
    """y'' behaves like -lambda / sqrt(pi t) near 0"""
    t = 1e-8
    regular = eval_y_derivative(1.5, t, 2).value + 1.5 / math.sqrt(math.pi * t)
    assert abs(regular) < 1e-6


@pytest.mark.parametrize("args", [(1.0, -0.1), (1.0, math.inf), (math.nan, 1.0)])
def test_invalid_arguments(args):
    """Negative times and bad orders are rejected"""
    with pytest.raises(InvalidParameterError):
        eval_y(*args)


def test_invalid_tolerance():
    """A zero tolerance or an unsupported derivative order is rejected"""
    with pytest.raises(InvalidParameterError):
        eval_y(1.0, 1.0, tol=0.0)
    with pytest.raises(InvalidParameterError):
        eval_y_derivative(1.0, 1.0, 4)


def test_grid_matches_pointwise_evaluation():
    """Grid and pointwise evaluation agree"""
    ts = np.array([0.0, 1e-6, 0.01, 0.3, 0.9, 2.0])
    for order in (0, 1):
        grid = eval_y_grid(-1.5, ts, order=order)
        if order == 0:
            pointwise = [eval_y(-1.5, t).value for t in ts]
        else:
            pointwise = [eval_y_derivative(-1.5, t, 1).value for t in ts]
        np.testing.assert_allclose(grid, pointwise, rtol=1e-15, atol=0)


def test_grid_keeps_shape():
    """Grid evaluation keeps the input shape"""
    ts = np.linspace(0.0, 1.0, 6).reshape(2, 3)
    assert eval_y_grid(1.0, ts).shape == (2, 3)


def test_term_cap_exceeded():
    """A small term cap raises TermCapExceededError"""
    with pytest.raises(TermCapExceededError) as info:
        eval_y(5.0, 10.0, term_cap=5)
    assert info.value.cap == 5
    assert info.value.lam == 5.0


def test_term_cap_from_environment(monkeypatch):
    """The term cap is read from the environment"""
    monkeypatch.setenv(TERM_CAP_ENV, "3")
    with pytest.raises(TermCapExceededError):
        eval_I(1.0, 2.0)


def test_large_argument_converges():
    """Large lambda^2 t^3 still matches the closed form"""
    # lambda^2 t^3 = 1000
    t = 10.0 ** (1.0 / 3.0)
    result = eval_I(10.0, t)
    assert math.isfinite(result.value)
    assert result.value == pytest.approx(eval_I_closed_form(10.0, t), rel=1e-9)


def test_tabulate_solution():
    """The tabulated frame has y = I - sqrt(2/pi) J"""
    frame = tabulate_solution(1.0, np.linspace(0.0, 1.0, 11))
    assert list(frame.columns) == ["t", "y", "I", "J", "terms_used"]
    assert len(frame) == 11
    assert frame["y"].iloc[0] == 1.0
    np.testing.assert_allclose(frame["y"], frame["I"] - math.sqrt(2 / math.pi) * frame["J"], rtol=1e-15)


def test_model_params():
    """ModelParams validation, alias and immutability"""
    params = ModelParams(**{"lambda": 2.0, "t_max": 3.0})
    assert params.lam == 2.0
    assert ModelParams(lam=-1.0).epsilon == 0.5
    for bad in ({"lam": 1.0, "epsilon": 1.0}, {"lam": 1.0, "t_max": 0.0}, {"lam": math.inf}):
        with pytest.raises(ValidationError):
            ModelParams(**bad)
    with pytest.raises(ValidationError):
        params.lam = 3.0


def test_potential_series_at_zero_lambda():
    """U = 2 h0 sqrt(t / pi) when lambda = 0"""
    for t in (0.0, 0.25, 2.0):
        expected = 2.0 * 3.0 * math.sqrt(t / math.pi)
        assert eval_U_series(0.0, 3.0, t).value == pytest.approx(expected, rel=1e-14, abs=0)
    assert eval_flux_series(0.0, 3.0, 0.25).value == pytest.approx(3.0 / math.sqrt(0.25 * math.pi), rel=1e-14)


def test_flux_series_is_derivative_of_potential():
    """The flux series is the derivative of the U series"""
    t, h = 0.6, 1e-5
    fd = (eval_U_series(1.2, 2.0, t + h).value - eval_U_series(1.2, 2.0, t - h).value) / (2 * h)
    assert eval_flux_series(1.2, 2.0, t).value == pytest.approx(fd, rel=1e-6)
    with pytest.raises(InvalidParameterError):
        eval_flux_series(1.2, 2.0, 0.0)


@pytest.mark.parametrize("lam", [-2.0, 0.7])
def test_potential_parts_recombine(lam):
    """sqrt(tau) P + Q reproduces U"""
    taus = np.array([0.0, 0.1, 0.5, 1.0])
    root, smooth = potential_parts(lam, 2.0, taus)
    combined = np.sqrt(taus) * root + smooth
    expected = [eval_U_series(lam, 2.0, t).value for t in taus]
    np.testing.assert_allclose(combined, expected, rtol=1e-12, atol=1e-15)
