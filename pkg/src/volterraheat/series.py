"""
Explicit series solution of the Volterra equation

    y(t) = 1 - (2 lambda / sqrt(pi)) int_0^t y(tau) sqrt(t - tau) dtau

is y = I - sqrt(2/pi) J with

    I(t) = sum_n lambda^(2n) t^(3n) / (3n)!
    J(t) = sum_n 2^(k/2) lambda^(2n+1) t^(k/2) / k!!,   k = 3(2n+1)

Every term is written with explicit integer powers of lambda, so negative
lambda needs no fractional power. Terms are built in the log domain with the
sign carried separately, summed in ascending order, and the sum stops once
a term is below tol * max(1, |partial sum|) after at least three shrinking
terms in a row.
"""
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Dict, Optional, Tuple, Union

import numpy as np
import pandas as pd
from pydantic import BaseModel, ConfigDict, Field

from volterraheat.config import default_term_cap
from volterraheat.errors import InvalidParameterError, NumericalError, TermCapExceededError
from volterraheat.specfun import log_factorial, log_gamma, log_odd_double_factorial

logger = logging.getLogger(__name__)

SQRT_2_OVER_PI = math.sqrt(2.0 / math.pi)
SQRT_PI = math.sqrt(math.pi)
_LOG_2 = math.log(2.0)
# Consecutive shrinking terms required before the tolerance test may stop a sum.
_SHRINK_STREAK = 3

TimeLike = Union[float, np.ndarray]


@dataclass(frozen=True)
class SeriesEvaluation:
    """
    A truncated series value with its truncation proxy
    """
    value: float
    terms_used: int
    last_term_magnitude: float

    def to_dict(self) -> Dict[str, float]:
        return {
            "value": self.value,
            "terms_used": self.terms_used,
            "last_term_magnitude": self.last_term_magnitude,
        }


class ModelParams(BaseModel):
    """
    Scalar inputs shared by the solution, heat and bounds computations
    """
    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias="lambda", allow_inf_nan=False)
    t_max: float = Field(1.0, gt=0, allow_inf_nan=False)
    h0: float = Field(1.0, gt=0, allow_inf_nan=False)
    epsilon: float = Field(0.5, gt=0, lt=1)


class PowerSeries(ABC):
    """
    Base class for series sum_n c_n t^(p_n) with closed-form c_n and p_n

    Subclasses give ln|c_n|, the sign of c_n and 2 p_n; p_n must increase with n.
    """

    id: str = "base-series"
    description: str = "Base class for all series"

    def __init__(self, lam: float):
        if not math.isfinite(lam):
            raise InvalidParameterError(f"lambda must be finite, got {lam!r}")
        self.lam = float(lam)
        self._log_abs_lam = math.log(abs(lam)) if lam != 0 else -math.inf
        self._sign_lam = 1.0 if lam >= 0 else -1.0

    def __str__(self) -> str:
        return f"{self.id} (lambda={self.lam!r})"

    def _log_lambda_power(self, k: int) -> float:
        """ln|lambda^k|, with lambda^0 = 1 also for lambda = 0."""
        return 0.0 if k == 0 else k * self._log_abs_lam

    def _alternating_sign(self, n: int) -> float:
        """Sign of (-lambda)^n."""
        return 1.0 if n % 2 == 0 else -self._sign_lam

    @abstractmethod
    def log_coefficient(self, n: int) -> float:
        """ln|c_n|, -inf when c_n vanishes."""

    @abstractmethod
    def coefficient_sign(self, n: int) -> float:
        """Sign of c_n."""

    @abstractmethod
    def exponent2(self, n: int) -> int:
        """Twice the power of t in term n."""


class ExponentialTrisectionSeries(PowerSeries):
    """The even part I(t) = sum lambda^(2n) t^(3n) / (3n)!."""

    id = "I"
    description = "Every third term of the exponential series in lambda^(2/3) t"

    def log_coefficient(self, n: int) -> float:
        return self._log_lambda_power(2 * n) - log_factorial(3 * n)

    def coefficient_sign(self, n: int) -> float:
        return 1.0

    def exponent2(self, n: int) -> int:
        return 6 * n


class HalfOddSeries(PowerSeries):
    """The odd part J(t) = sum 2^(k/2) lambda^(2n+1) t^(k/2) / k!!, k = 3(2n+1)."""

    id = "J"
    description = "Half-integer powers with odd double factorials"

    def log_coefficient(self, n: int) -> float:
        k = 3 * (2 * n + 1)
        return k / 2 * _LOG_2 + self._log_lambda_power(2 * n + 1) - log_odd_double_factorial(k)

    def coefficient_sign(self, n: int) -> float:
        return self._sign_lam

    def exponent2(self, n: int) -> int:
        return 3 * (2 * n + 1)


class AdomianSeries(PowerSeries):
    """Adomian components y_n = (-lambda)^n t^(3n/2) / Gamma(3n/2 + 1)."""

    id = "adomian"
    description = "Closed form of the Adomian recurrence"

    def log_coefficient(self, n: int) -> float:
        return self._log_lambda_power(n) - log_gamma(1.5 * n + 1)

    def coefficient_sign(self, n: int) -> float:
        return self._alternating_sign(n)

    def exponent2(self, n: int) -> int:
        return 3 * n


class PotentialSeries(PowerSeries):
    """
    U(t) / h0 = sum (-lambda)^n t^((3n+1)/2) / Gamma((3n+3)/2)

    Termwise Abel integral (1/sqrt(pi)) int_0^t y(tau) / sqrt(t - tau) dtau of
    the Adomian form of y.
    """

    id = "potential"
    description = "Abel transform of the solution, per unit initial temperature"

    def log_coefficient(self, n: int) -> float:
        return self._log_lambda_power(n) - log_gamma((3 * n + 3) / 2)

    def coefficient_sign(self, n: int) -> float:
        return self._alternating_sign(n)

    def exponent2(self, n: int) -> int:
        return 3 * n + 1


class PotentialRootPart(PowerSeries):
    """P with U / h0 = sqrt(t) P(t) + Q(t): P(t) = sum lambda^(2m) t^(3m) / Gamma(3m + 3/2)."""

    id = "potential-root"

    def log_coefficient(self, n: int) -> float:
        return self._log_lambda_power(2 * n) - log_gamma(3 * n + 1.5)

    def coefficient_sign(self, n: int) -> float:
        return 1.0

    def exponent2(self, n: int) -> int:
        return 6 * n


class PotentialSmoothPart(PowerSeries):
    """Q with U / h0 = sqrt(t) P(t) + Q(t): Q(t) = -sum lambda^(2m+1) t^(3m+2) / (3m+2)!."""

    id = "potential-smooth"

    def log_coefficient(self, n: int) -> float:
        return self._log_lambda_power(2 * n + 1) - log_factorial(3 * n + 2)

    def coefficient_sign(self, n: int) -> float:
        return -self._sign_lam

    def exponent2(self, n: int) -> int:
        return 6 * n + 4


def _falling_factorial(p: float, order: int) -> float:
    result = 1.0
    for i in range(order):
        result *= p - i
    return result


def _check_inputs(t: np.ndarray, tol: float, order: int) -> None:
    if not (tol > 0 and math.isfinite(tol)):
        raise InvalidParameterError(f"tol must be positive and finite, got {tol!r}")
    if order not in (0, 1, 2, 3):
        raise InvalidParameterError(f"Derivative order must be 0, 1, 2 or 3, got {order!r}")
    if not np.all(np.isfinite(t)) or np.any(t < 0):
        raise InvalidParameterError("Series arguments must be finite and nonnegative")


def _value_at_origin(series: PowerSeries, order: int) -> float:
    # Only the term with p_n == order survives at t = 0.
    total = 0.0
    n = 0
    while series.exponent2(n) <= 2 * order:
        p = series.exponent2(n) / 2
        ff = _falling_factorial(p, order)
        log_c = series.log_coefficient(n)
        if ff != 0 and log_c != -math.inf:
            if series.exponent2(n) < 2 * order:
                raise InvalidParameterError(
                    f"Derivative of order {order} of the {series.id} series is singular at t = 0"
                )
            total += series.coefficient_sign(n) * ff * math.exp(log_c)
        n += 1
    return total


def evaluate(
    series: PowerSeries,
    t: TimeLike,
    order: int = 0,
    tol: float = 1e-10,
    term_cap: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Sum a series (or its derivative) at one or more points

    Each point carries its own stopping rule, so a value does not depend on
    the other points it is evaluated with.

    Args:
        series: Series to sum
        t: Nonnegative time(s)
        order: Derivative order, 0 to 3
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms (VOLTERRA_TERM_CAP when omitted)

    Returns:
        Tuple of arrays (values, terms used, last term magnitude)

    Raises:
        TermCapExceededError: If a point does not converge within the cap
        NumericalError: If a sum overflows
    """
    t = np.atleast_1d(np.asarray(t, dtype=float))
    _check_inputs(t, tol, order)
    cap = default_term_cap() if term_cap is None else int(term_cap)

    values = np.zeros_like(t)
    terms = np.ones(t.shape, dtype=int)
    last = np.zeros_like(t)

    origin = t == 0
    if origin.any():
        values[origin] = _value_at_origin(series, order)

    positive = ~origin
    if not positive.any():
        return values, terms, last

    log_t = np.log(t[positive])
    total = np.zeros_like(log_t)
    used = np.zeros(log_t.shape, dtype=int)
    last_mag = np.zeros_like(log_t)
    previous = np.full_like(log_t, np.inf)
    streak = np.zeros(log_t.shape, dtype=int)
    active = np.ones(log_t.shape, dtype=bool)

    with np.errstate(over="ignore"):
        for n in range(cap):
            p = series.exponent2(n) / 2
            ff = _falling_factorial(p, order)
            log_c = series.log_coefficient(n)
            if ff == 0 or log_c == -math.inf:
                magnitude = np.zeros_like(log_t)
                term = magnitude
            else:
                magnitude = np.exp(log_c + math.log(abs(ff)) + (p - order) * log_t)
                term = (series.coefficient_sign(n) * math.copysign(1.0, ff)) * magnitude

            total[active] += term[active]
            used[active] = n + 1
            last_mag[active] = magnitude[active]

            shrinking = (magnitude < previous) | (magnitude == 0)
            streak = np.where(shrinking, streak + 1, 0)
            previous = magnitude

            converged = (magnitude <= tol * np.maximum(1.0, np.abs(total))) & (streak >= _SHRINK_STREAK)
            active &= ~converged
            if not active.any():
                break
        else:
            stuck = float(t[positive][active][0])
            raise TermCapExceededError(series.id, series.lam, stuck, cap)

    if not np.all(np.isfinite(total)):
        raise NumericalError(f"{series.id} series overflowed for lambda={series.lam!r}")

    values[positive] = total
    terms[positive] = used
    last[positive] = last_mag
    return values, terms, last


def _scalar(series: PowerSeries, t: float, order: int, tol: float, term_cap: Optional[int]) -> SeriesEvaluation:
    values, terms, last = evaluate(series, t, order, tol, term_cap)
    return SeriesEvaluation(float(values[0]), int(terms[0]), float(last[0]))


def _combine(i_part: SeriesEvaluation, j_part: SeriesEvaluation) -> SeriesEvaluation:
    return SeriesEvaluation(
        value=i_part.value - SQRT_2_OVER_PI * j_part.value,
        terms_used=i_part.terms_used + j_part.terms_used,
        last_term_magnitude=i_part.last_term_magnitude + SQRT_2_OVER_PI * j_part.last_term_magnitude,
    )


def eval_I(lam: float, t: float, tol: float = 1e-10, term_cap: Optional[int] = None) -> SeriesEvaluation:
    """
    Evaluate I(t) = sum lambda^(2n) t^(3n) / (3n)!

    Args:
        lam: Parameter lambda
        t: Nonnegative time
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms

    Returns:
        Series evaluation
    """
    return _scalar(ExponentialTrisectionSeries(lam), t, 0, tol, term_cap)


def eval_J(lam: float, t: float, tol: float = 1e-10, term_cap: Optional[int] = None) -> SeriesEvaluation:
    """
    Evaluate J(t) = sum 2^(k/2) lambda^(2n+1) t^(k/2) / k!!, k = 3(2n+1)

    Args:
        lam: Parameter lambda
        t: Nonnegative time
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms

    Returns:
        Series evaluation
    """
    return _scalar(HalfOddSeries(lam), t, 0, tol, term_cap)


def eval_y(lam: float, t: float, tol: float = 1e-10, term_cap: Optional[int] = None) -> SeriesEvaluation:
    """
    Evaluate the solution y = I - sqrt(2/pi) J

    Both parts are summed at tolerance tol / 2.

    Args:
        lam: Parameter lambda
        t: Nonnegative time
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms per part

    Returns:
        Series evaluation
    """
    return _combine(
        _scalar(ExponentialTrisectionSeries(lam), t, 0, tol / 2, term_cap),
        _scalar(HalfOddSeries(lam), t, 0, tol / 2, term_cap),
    )


def eval_y_derivative(
    lam: float, t: float, order: int, tol: float = 1e-10, term_cap: Optional[int] = None
) -> SeriesEvaluation:
    """
    Evaluate y', y'' or y''' by termwise differentiation

    Args:
        lam: Parameter lambda
        t: Time; positive for orders 2 and 3
        order: 1, 2 or 3
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms per part

    Returns:
        Series evaluation

    Raises:
        InvalidParameterError: For t = 0 with order >= 2
    """
    if order not in (1, 2, 3):
        raise InvalidParameterError(f"Derivative order must be 1, 2 or 3, got {order!r}")
    if order >= 2 and not t > 0:
        raise InvalidParameterError(f"y^({order}) is singular at t = 0; need t > 0, got {t!r}")
    return _combine(
        _scalar(ExponentialTrisectionSeries(lam), t, order, tol / 2, term_cap),
        _scalar(HalfOddSeries(lam), t, order, tol / 2, term_cap),
    )


def eval_y_grid(
    lam: float, ts: np.ndarray, tol: float = 1e-10, order: int = 0, term_cap: Optional[int] = None
) -> np.ndarray:
    """
    Evaluate y or one of its derivatives at many points

    Point by point identical to eval_y / eval_y_derivative.

    Args:
        lam: Parameter lambda
        ts: Nonnegative times
        tol: Relative stopping tolerance
        order: Derivative order, 0 to 3
        term_cap: Maximum number of terms per part

    Returns:
        Array of values
    """
    ts = np.asarray(ts, dtype=float)
    if order >= 2 and np.any(ts <= 0):
        raise InvalidParameterError(f"y^({order}) is singular at t = 0")
    i_values, i_terms, _ = evaluate(ExponentialTrisectionSeries(lam), ts, order, tol / 2, term_cap)
    j_values, j_terms, _ = evaluate(HalfOddSeries(lam), ts, order, tol / 2, term_cap)
    logger.debug(
        "Evaluated y^(%d) at %d points for lambda=%r, up to %d terms",
        order, ts.size, lam, int(np.max(i_terms + j_terms)) if ts.size else 0,
    )
    return (i_values - SQRT_2_OVER_PI * j_values).reshape(ts.shape)


def tabulate_solution(
    lam: float, ts: np.ndarray, tol: float = 1e-10, term_cap: Optional[int] = None
) -> pd.DataFrame:
    """
    Tabulate y, I and J on a set of points

    Args:
        lam: Parameter lambda
        ts: Nonnegative times
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms per part

    Returns:
        DataFrame with columns t, y, I, J, terms_used
    """
    ts = np.asarray(ts, dtype=float)
    i_values, i_terms, _ = evaluate(ExponentialTrisectionSeries(lam), ts, 0, tol / 2, term_cap)
    j_values, j_terms, _ = evaluate(HalfOddSeries(lam), ts, 0, tol / 2, term_cap)
    return pd.DataFrame({
        "t": ts,
        "y": i_values - SQRT_2_OVER_PI * j_values,
        "I": i_values,
        "J": j_values,
        "terms_used": i_terms + j_terms,
    })


def eval_I_closed_form(lam: float, t: float) -> float:
    """
    I(t) = (e^(mu t) + 2 e^(-mu t / 2) cos(sqrt(3) mu t / 2)) / 3, mu = |lambda|^(2/3)

    I depends on lambda only through lambda^2, so |lambda| is used.
    """
    mu_t = abs(lam) ** (2.0 / 3.0) * t
    return (math.exp(mu_t) + 2.0 * math.exp(-mu_t / 2) * math.cos(math.sqrt(3.0) * mu_t / 2)) / 3.0


def adomian_partial_sum(lam: float, t: TimeLike, n_terms: int) -> TimeLike:
    """
    Sum of the first n_terms Adomian components (-lambda)^n t^(3n/2) / Gamma(3n/2 + 1)

    Args:
        lam: Parameter lambda
        t: Nonnegative time(s)
        n_terms: Number of components, at least 1

    Returns:
        Partial sum, scalar or array like t
    """
    if n_terms < 1:
        raise InvalidParameterError(f"n_terms must be at least 1, got {n_terms!r}")
    series = AdomianSeries(lam)
    t_arr = np.asarray(t, dtype=float)
    total = np.zeros_like(t_arr)
    for n in range(n_terms):
        log_c = series.log_coefficient(n)
        if log_c == -math.inf:
            continue
        total = total + series.coefficient_sign(n) * np.exp(log_c) * t_arr ** (series.exponent2(n) / 2)
    return float(total) if np.ndim(total) == 0 else total


def eval_U_series(
    lam: float, h0: float, t: float, tol: float = 1e-12, term_cap: Optional[int] = None
) -> SeriesEvaluation:
    """
    U(t) = (h0 / sqrt(pi)) int_0^t y(tau) / sqrt(t - tau) dtau, summed termwise

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        t: Nonnegative time
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms

    Returns:
        Series evaluation scaled by h0
    """
    result = _scalar(PotentialSeries(lam), t, 0, tol, term_cap)
    return SeriesEvaluation(h0 * result.value, result.terms_used, h0 * result.last_term_magnitude)


def eval_flux_series(
    lam: float, h0: float, t: float, tol: float = 1e-12, term_cap: Optional[int] = None
) -> SeriesEvaluation:
    """
    Boundary flux U'(t), summed termwise; singular like h0 / sqrt(pi t) at 0

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        t: Positive time
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms

    Returns:
        Series evaluation scaled by h0
    """
    if not t > 0:
        raise InvalidParameterError(f"The boundary flux needs t > 0, got {t!r}")
    result = _scalar(PotentialSeries(lam), t, 1, tol, term_cap)
    return SeriesEvaluation(h0 * result.value, result.terms_used, h0 * result.last_term_magnitude)


def potential_parts(
    lam: float, h0: float, taus: np.ndarray, tol: float = 1e-13, term_cap: Optional[int] = None
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Split U(tau) = sqrt(tau) P(tau) + Q(tau) with P and Q smooth

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        taus: Nonnegative times
        tol: Relative stopping tolerance
        term_cap: Maximum number of terms

    Returns:
        Tuple (P(taus), Q(taus)), both scaled by h0
    """
    root, _, _ = evaluate(PotentialRootPart(lam), taus, 0, tol, term_cap)
    smooth, _, _ = evaluate(PotentialSmoothPart(lam), taus, 0, tol, term_cap)
    return h0 * root, h0 * smooth
