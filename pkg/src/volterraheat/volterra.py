"""
Product integration for the kernels sqrt(t - tau) and 1 / sqrt(t - tau)

Grid functions are interpolated piecewise linearly and the kernel times each
linear basis function is integrated exactly, so the singular kernel is
never sampled. The marching solver uses the same weights for

    y(t) = 1 - (2 lambda / sqrt(pi)) int_0^t y(tau) sqrt(t - tau) dtau
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Dict, List, Optional

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from volterraheat.errors import DivisorUnderflowError, InvalidParameterError

logger = logging.getLogger(__name__)

SQRT_KERNEL = 0.5
INV_SQRT_KERNEL = -0.5
_DIVISOR_FLOOR = 1e-14


@dataclass(frozen=True, eq=False)
class GridFunction:
    """
    Samples f(t0 + i dt) of a function on a uniform grid
    """
    dt: float
    values: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        values = np.array(self.values, dtype=float).reshape(-1)
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise InvalidParameterError(f"Grid step must be positive, got {self.dt!r}")
        if values.size == 0:
            raise InvalidParameterError("Grid function needs at least one value")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(cls, f: Callable[[np.ndarray], np.ndarray], t_max: float, steps: int) -> "GridFunction":
        """
        Sample a vectorised function on [0, t_max]

        Args:
            f: Function accepting an array of times
            t_max: End of the grid
            steps: Number of intervals

        Returns:
            Grid function with steps + 1 values
        """
        _check_steps(steps)
        times = np.linspace(0.0, t_max, steps + 1)
        return cls(dt=t_max / steps, values=np.asarray(f(times), dtype=float) * np.ones_like(times))

    def __len__(self) -> int:
        return self.values.size

    @property
    def steps(self) -> int:
        return self.values.size - 1

    @property
    def t_max(self) -> float:
        return self.t0 + self.dt * self.steps

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.values.size)

    def with_values(self, values: np.ndarray) -> "GridFunction":
        """Same grid, new samples."""
        return GridFunction(dt=self.dt, values=values, t0=self.t0)

    def descriptor(self) -> Dict[str, float]:
        """Grid parameters for reports."""
        return {"t0": self.t0, "dt": self.dt, "steps": self.steps, "t_max": self.t_max}


@dataclass(frozen=True, eq=False)
class KernelMoments:
    """
    Exact integrals of the kernel s^alpha over s in [m dt, (m+1) dt]

    m0[m] is the plain integral and m1[m] the first moment. older[m] and
    newer[m] weight the two ends of the interval that lies m steps back.
    """
    alpha: float
    dt: float
    m0: np.ndarray
    m1: np.ndarray
    older: np.ndarray
    newer: np.ndarray

    def exact_total(self, count: int) -> float:
        """int_0^(count dt) s^alpha ds."""
        return (count * self.dt) ** (self.alpha + 1) / (self.alpha + 1)


def _power_difference(m: np.ndarray, a: float) -> np.ndarray:
    # (m + 1)^a - m^a without cancellation for large m.
    result = np.ones_like(m)
    positive = m > 0
    mp = m[positive]
    result[positive] = mp ** a * np.expm1(a * np.log1p(1.0 / mp))
    return result


@lru_cache(maxsize=32)
def kernel_moments(alpha: float, dt: float, count: int) -> KernelMoments:
    """
    Product-integration weights for the kernel s^alpha

    Args:
        alpha: Kernel exponent, 1/2 or -1/2
        dt: Grid step
        count: Number of intervals

    Returns:
        Read-only moments for offsets 0 .. count - 1
    """
    if alpha not in (SQRT_KERNEL, INV_SQRT_KERNEL):
        raise InvalidParameterError(f"Only the kernels s^(1/2) and s^(-1/2) are supported, got {alpha!r}")
    if not dt > 0 or count < 1:
        raise InvalidParameterError(f"Need dt > 0 and count >= 1, got {dt!r}, {count!r}")

    m = np.arange(count, dtype=float)
    m0 = dt ** (alpha + 1) * _power_difference(m, alpha + 1) / (alpha + 1)
    m1 = dt ** (alpha + 2) * _power_difference(m, alpha + 2) / (alpha + 2)
    older = (m1 - m * dt * m0) / dt
    newer = ((m + 1) * dt * m0 - m1) / dt
    for array in (m0, m1, older, newer):
        array.setflags(write=False)
    return KernelMoments(alpha=alpha, dt=dt, m0=m0, m1=m1, older=older, newer=newer)


def _check_steps(steps: int) -> None:
    if int(steps) != steps or steps < 2:
        raise InvalidParameterError(f"steps must be an integer >= 2, got {steps!r}")


def _check_index(f: GridFunction, t_index: int) -> None:
    if int(t_index) != t_index or not 0 <= t_index < len(f):
        raise InvalidParameterError(f"t_index {t_index!r} outside 0 .. {len(f) - 1}")


def _convolve(f: GridFunction, t_index: int, alpha: float) -> float:
    _check_index(f, t_index)
    n = int(t_index)
    if n == 0:
        return 0.0
    moments = kernel_moments(alpha, f.dt, len(f) - 1)
    values = f.values
    return float(
        np.dot(moments.older[:n][::-1], values[:n]) + np.dot(moments.newer[:n][::-1], values[1:n + 1])
    )


def convolve_sqrt(f: GridFunction, t_index: int) -> float:
    """
    int_0^t f(tau) sqrt(t - tau) dtau at t = t_index dt

    Args:
        f: Grid function
        t_index: Index of the upper limit

    Returns:
        Product-integration value, O(dt^2) for smooth f
    """
    return _convolve(f, t_index, SQRT_KERNEL)


def convolve_inv_sqrt(f: GridFunction, t_index: int) -> float:
    """
    int_0^t f(tau) / sqrt(t - tau) dtau at t = t_index dt

    Args:
        f: Grid function, bounded
        t_index: Index of the upper limit

    Returns:
        Product-integration value, O(dt^2) for smooth f
    """
    return _convolve(f, t_index, INV_SQRT_KERNEL)


def convolve_all(f: GridFunction, alpha: float = SQRT_KERNEL) -> GridFunction:
    """
    The convolution with s^alpha at every grid point at once

    Args:
        f: Grid function
        alpha: Kernel exponent, 1/2 or -1/2

    Returns:
        Grid function of convolution values, 0 at the first point
    """
    count = len(f) - 1
    result = np.zeros(len(f))
    if count >= 1:
        moments = kernel_moments(alpha, f.dt, count)
        result[1:] = (
            np.convolve(f.values[:-1], moments.older)[:count]
            + np.convolve(f.values[1:], moments.newer)[:count]
        )
    return f.with_values(result)


def solve_volterra(lam: float, t_max: float, steps: int) -> GridFunction:
    """
    March the Volterra equation on a uniform grid

    Each step is a scalar linear equation for the newest value, whose kernel
    weight is (4/15) dt^(3/2).

    Args:
        lam: Parameter lambda
        t_max: End of the grid
        steps: Number of intervals

    Returns:
        Grid function with y(0) = 1

    Raises:
        DivisorUnderflowError: If a step divisor falls below 1e-14 in magnitude
    """
    _check_steps(steps)
    if not (t_max > 0 and math.isfinite(t_max)):
        raise InvalidParameterError(f"t_max must be positive, got {t_max!r}")
    dt = t_max / steps
    moments = kernel_moments(SQRT_KERNEL, dt, steps)
    older, newer = moments.older, moments.newer
    c = 2.0 * lam / math.sqrt(math.pi)

    divisor = 1.0 + c * newer[0]
    if abs(divisor) < _DIVISOR_FLOOR:
        raise DivisorUnderflowError(1, divisor)

    y = np.empty(steps + 1)
    y[0] = 1.0
    for n in range(1, steps + 1):
        rest = np.dot(older[:n][::-1], y[:n]) + np.dot(newer[1:n][::-1], y[1:n])
        y[n] = (1.0 - c * rest) / divisor

    logger.debug("Marched %d steps for lambda=%r, dt=%r", steps, lam, dt)
    return GridFunction(dt=dt, values=y)


def volterra_residual(y: GridFunction, lam: float) -> GridFunction:
    """
    phi(t) = y(t) - 1 + (2 lambda / sqrt(pi)) int_0^t y(tau) sqrt(t - tau) dtau

    Args:
        y: Candidate solution on a grid
        lam: Parameter lambda

    Returns:
        phi on the same grid
    """
    c = 2.0 * lam / math.sqrt(math.pi)
    return y.with_values(y.values - 1.0 + c * convolve_all(y, SQRT_KERNEL).values)


def adomian_terms(lam: float, t_max: float, steps: int, n_terms: int) -> List[GridFunction]:
    """
    Adomian components y_0 = 1, y_n = -(2 lambda / sqrt(pi)) int y_(n-1)(tau) sqrt(t - tau) dtau

    Args:
        lam: Parameter lambda
        t_max: End of the grid
        steps: Number of intervals
        n_terms: Number of components

    Returns:
        List [y_0, ..., y_(n_terms - 1)]
    """
    _check_steps(steps)
    if int(n_terms) != n_terms or n_terms < 1:
        raise InvalidParameterError(f"n_terms must be a positive integer, got {n_terms!r}")
    c = 2.0 * lam / math.sqrt(math.pi)
    terms = [GridFunction(dt=t_max / steps, values=np.ones(steps + 1))]
    for _ in range(1, n_terms):
        previous = terms[-1]
        terms.append(previous.with_values(-c * convolve_all(previous, SQRT_KERNEL).values))
    return terms


def cumulative_integral(f: GridFunction) -> GridFunction:
    """
    F(t) = int_0^t f(tau) dtau at every grid point (composite Simpson)

    Args:
        f: Grid function with at least three values

    Returns:
        Grid function with F(0) = 0
    """
    if len(f) < 3:
        raise InvalidParameterError("Simpson quadrature needs at least three grid values")
    return f.with_values(cumulative_simpson(f.values, dx=f.dt, initial=0.0))


def repeated_integral(f: GridFunction, order: int = 2) -> float:
    """
    The order-fold iterated integral of f from 0 to t_max

    Equals int_0^T f(tau) (T - tau)^(order - 1) dtau / (order - 1)!.

    Args:
        f: Grid function
        order: Number of nested integrations, at least 1

    Returns:
        Iterated integral over the whole grid
    """
    if int(order) != order or order < 1:
        raise InvalidParameterError(f"order must be a positive integer, got {order!r}")
    inner = f
    for _ in range(order - 1):
        inner = cumulative_integral(inner)
    return float(simpson(inner.values, dx=f.dt))


def moment_integral(f: GridFunction, power: int, t_index: Optional[int] = None) -> float:
    """
    int_0^t f(tau) (t - tau)^power dtau by composite Simpson

    Args:
        f: Grid function
        power: Nonnegative integer power
        t_index: Index of the upper limit (last point when omitted)

    Returns:
        Moment integral
    """
    if int(power) != power or power < 0:
        raise InvalidParameterError(f"power must be a nonnegative integer, got {power!r}")
    n = len(f) - 1 if t_index is None else t_index
    _check_index(f, n)
    if n < 2:
        raise InvalidParameterError("Simpson quadrature needs at least three grid values")
    times = f.times[:n + 1]
    integrand = f.values[:n + 1] * (times[-1] - times) ** power
    return float(simpson(integrand, dx=f.dt))


def shifted_root_integral(sigma: float, t: float, steps: int) -> float:
    """
    int_sigma^t sqrt(tau - sigma) / sqrt(t - tau) dtau, which equals (pi / 2)(t - sigma)

    Computed with convolve_inv_sqrt of sqrt(tau - sigma)_+ on a grid over
    [0, t] that has sigma on a node.

    Args:
        sigma: Lower point, 0 <= sigma < t
        t: Upper limit
        steps: Number of intervals on [0, t]

    Returns:
        Quadrature value
    """
    if not 0 <= sigma < t:
        raise InvalidParameterError(f"Need 0 <= sigma < t, got {sigma!r}, {t!r}")
    _check_steps(steps)
    dt = t / steps
    if abs(sigma / dt - round(sigma / dt)) > 1e-9:
        raise InvalidParameterError(f"sigma={sigma!r} must lie on a grid node of step {dt!r}")
    f = GridFunction.from_function(lambda tau: np.sqrt(np.maximum(tau - sigma, 0.0)), t, steps)
    return convolve_inv_sqrt(f, steps)


def reciprocal_root_integral(sigma: float, t: float, steps: int) -> float:
    """
    int_sigma^t dtau / (sqrt(t - tau) sqrt(tau - sigma)), which equals pi

    With tau - sigma = s^2 and L = t - sigma the integral becomes
    int_0^sqrt(L) (2 / sqrt(sqrt(L) + s)) / sqrt(sqrt(L) - s) ds, a bounded
    function against the inverse square-root kernel.

    Args:
        sigma: Lower point, sigma < t
        t: Upper limit
        steps: Number of intervals on [0, sqrt(L)]

    Returns:
        Quadrature value
    """
    if not sigma < t:
        raise InvalidParameterError(f"Need sigma < t, got {sigma!r}, {t!r}")
    root = math.sqrt(t - sigma)
    f = GridFunction.from_function(lambda s: 2.0 / np.sqrt(root + s), root, steps)
    return convolve_inv_sqrt(f, steps)
