"""
Explicit solution of the heat equation with a memory source

    u_t - u_xx = -lambda int_0^t u_x(0, tau) dtau,   x > 0, t > 0
    u(0, t) = 0,   u(x, 0) = h0

given by

    u(x, t) = h0 erf(x / (2 sqrt(t))) - lambda int_0^t erf(x / (2 sqrt(t - tau))) U(tau) dtau
    U(t) = (h0 / sqrt(pi)) int_0^t g(tau) / sqrt(t - tau) dtau

with g the solution of the Volterra equation. U(tau) = sqrt(tau) P(tau) + Q(tau)
with P and Q entire, so after tau = t sin^2(theta) the u-integrand is smooth
in theta and a fixed composite Gauss-Legendre rule integrates it.
"""
import logging
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple, Union

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.integrate import simpson

from volterraheat.errors import InvalidParameterError
from volterraheat.series import PotentialSeries, eval_y_grid, evaluate, potential_parts
from volterraheat.specfun import erf
from volterraheat.volterra import INV_SQRT_KERNEL, GridFunction, convolve_all

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
# Simpson panels for the memory term in the PDE residual
MEMORY_PANELS = 1024
WEIGHT_CACHE_SIZE = 256


@dataclass(frozen=True)
class HeatSample:
    """
    Temperature at one point, with optional boundary flux and PDE defect
    """
    x: float
    t: float
    u: float
    flux0: Optional[float] = None
    residual: Optional[float] = None

    def __post_init__(self):
        if not self.x >= 0 or not self.t > 0:
            raise InvalidParameterError(f"Need x >= 0 and t > 0, got x={self.x!r}, t={self.t!r}")


@lru_cache(maxsize=16)
def _theta_rule(panels: int, order: int) -> Tuple[np.ndarray, np.ndarray]:
    # Composite Gauss-Legendre nodes and weights on [0, pi / 2].
    if panels < 1 or order < 1:
        raise InvalidParameterError(f"Need panels >= 1 and order >= 1, got {panels!r}, {order!r}")
    x, w = leggauss(order)
    width = (math.pi / 2) / panels
    left = width * np.arange(panels)
    nodes = (left[:, None] + width * (x[None, :] + 1.0) / 2).ravel()
    weights = np.tile(w * width / 2, panels)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _check_positive(name: str, value: float) -> None:
    if not (value > 0 and math.isfinite(value)):
        raise InvalidParameterError(f"{name} must be positive and finite, got {value!r}")


def eval_U(lam: float, h0: float, t_max: float, steps: int, tol: float = 1e-12) -> GridFunction:
    """
    U on a uniform grid by product integration of the series solution

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        t_max: End of the grid
        steps: Number of intervals
        tol: Series tolerance

    Returns:
        Grid function with U(0) = 0
    """
    _check_positive("h0", h0)
    g = GridFunction.from_function(lambda ts: eval_y_grid(lam, ts, tol), t_max, steps)
    return g.with_values(h0 / SQRT_PI * convolve_all(g, INV_SQRT_KERNEL).values)


def eval_flux0(lam: float, h0: float, t: float, steps: int = 1000, tol: float = 1e-12) -> float:
    """
    Boundary flux u_x(0, t) = h0 / sqrt(pi t) - h0 lambda int_0^t g

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        t: Positive time
        steps: Simpson panels on [0, t]
        tol: Series tolerance

    Returns:
        Flux at x = 0
    """
    _check_positive("t", t)
    _check_positive("h0", h0)
    taus = np.linspace(0.0, t, steps + 1)
    integral = simpson(eval_y_grid(lam, taus, tol), dx=t / steps)
    return h0 / math.sqrt(math.pi * t) - h0 * lam * integral


class HeatSolution:
    """
    Temperature field for one (lambda, h0), caching per-time quadrature data
    """

    def __init__(
        self,
        lam: float,
        h0: float = 1.0,
        panels: int = 8,
        order: int = 16,
        tol: float = 1e-13,
        term_cap: Optional[int] = None,
    ):
        """
        Initialize the solution

        Args:
            lam: Parameter lambda
            h0: Initial temperature
            panels: Gauss-Legendre panels in theta
            order: Nodes per panel
            tol: Series tolerance for U
            term_cap: Series term cap
        """
        _check_positive("h0", h0)
        self.lam = float(lam)
        self.h0 = float(h0)
        self.tol = tol
        self.term_cap = term_cap
        self._nodes, self._weights = _theta_rule(int(panels), int(order))
        self._sin = np.sin(self._nodes)
        self._cos = np.cos(self._nodes)
        # Weights for recently used times, bounded so long sweeps do not accumulate.
        self._memory_weights = lru_cache(maxsize=WEIGHT_CACHE_SIZE)(self._compute_memory_weights)

    def _compute_memory_weights(self, t: float) -> np.ndarray:
        # Quadrature weight times U(t sin^2 theta) times the Jacobian 2 t sin cos.
        taus = t * self._sin ** 2
        root, smooth = potential_parts(self.lam, self.h0, taus, self.tol, self.term_cap)
        potential = math.sqrt(t) * self._sin * root + smooth
        weights = self._weights * potential * 2.0 * t * self._sin * self._cos
        weights.setflags(write=False)
        return weights

    def temperature(self, x: Union[float, np.ndarray], t: float) -> Union[float, np.ndarray]:
        """
        u(x, t) for one time and one or more positions

        Args:
            x: Nonnegative position(s)
            t: Positive time

        Returns:
            Temperature, scalar or array like x
        """
        _check_positive("t", t)
        x_arr = np.asarray(x, dtype=float)
        if np.any(x_arr < 0) or not np.all(np.isfinite(x_arr)):
            raise InvalidParameterError("Positions must be finite and nonnegative")
        flat = np.atleast_1d(x_arr)
        u = self.h0 * erf(flat / (2.0 * math.sqrt(t)))
        if self.lam != 0:
            erf_factor = erf(np.outer(flat, 1.0 / (2.0 * math.sqrt(t) * self._cos)))
            u = u - self.lam * (erf_factor @ self._memory_weights(t))
        u = np.asarray(u, dtype=float)
        return float(u[0]) if x_arr.ndim == 0 else u.reshape(x_arr.shape)

    def sweep(self, xs: np.ndarray, ts: np.ndarray) -> np.ndarray:
        """
        u on a tensor grid

        Args:
            xs: Nonnegative positions
            ts: Positive times

        Returns:
            Array of shape (len(ts), len(xs))
        """
        xs = np.asarray(xs, dtype=float)
        return np.vstack([self.temperature(xs, float(t)) for t in np.asarray(ts, dtype=float)])

    def potential(self, ts: np.ndarray) -> np.ndarray:
        """
        U at the given times from its series

        Args:
            ts: Nonnegative times

        Returns:
            U values
        """
        values, _, _ = evaluate(PotentialSeries(self.lam), ts, 0, self.tol, self.term_cap)
        return self.h0 * values

    def flux0(self, ts: np.ndarray) -> np.ndarray:
        """
        Boundary flux U'(t) from the series

        Args:
            ts: Positive times

        Returns:
            Flux values
        """
        ts = np.asarray(ts, dtype=float)
        if np.any(ts <= 0):
            raise InvalidParameterError("The boundary flux needs t > 0")
        values, _, _ = evaluate(PotentialSeries(self.lam), ts, 1, self.tol, self.term_cap)
        return self.h0 * values

    def memory(self, t: float, panels: int = MEMORY_PANELS) -> float:
        """
        int_0^t u_x(0, tau) dtau by Simpson quadrature after tau = s^2

        Args:
            t: Positive time
            panels: Simpson panels in s

        Returns:
            Accumulated boundary flux
        """
        _check_positive("t", t)
        s = np.linspace(0.0, math.sqrt(t), panels + 1)
        integrand = np.empty_like(s)
        # 2 s U'(s^2) -> 2 h0 / sqrt(pi) as s -> 0
        integrand[0] = 2.0 * self.h0 / SQRT_PI
        integrand[1:] = 2.0 * s[1:] * self.flux0(s[1:] ** 2)
        return float(simpson(integrand, dx=s[1] - s[0]))

    def sample(self, x: float, t: float) -> HeatSample:
        """
        Temperature at a point, with the boundary flux when x = 0

        Args:
            x: Nonnegative position
            t: Positive time

        Returns:
            Heat sample
        """
        flux = float(self.flux0(np.array([t]))[0]) if x == 0 else None
        return HeatSample(x=float(x), t=float(t), u=self.temperature(x, t), flux0=flux)


def eval_u(lam: float, h0: float, x: float, t: float, panels: int = 8, order: int = 16) -> float:
    """
    u(x, t)

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        x: Nonnegative position
        t: Positive time
        panels: Gauss-Legendre panels for the memory integral
        order: Nodes per panel

    Returns:
        Temperature
    """
    return HeatSolution(lam, h0, panels, order).temperature(x, t)


def pde_residual(
    lam: float,
    h0: float,
    x: float,
    t: float,
    dx: float = 1e-3,
    dt_fd: float = 1e-3,
    panels: int = 8,
    order: int = 16,
) -> float:
    """
    Finite-difference defect u_t - u_xx + lambda int_0^t u_x(0, tau) dtau

    Central differences in t and x; the defect is O(dx^2 + dt_fd^2).

    Args:
        lam: Parameter lambda
        h0: Initial temperature
        x: Position with x - dx > 0
        t: Time with t - dt_fd > 0
        dx: Spatial difference step
        dt_fd: Temporal difference step
        panels: Gauss-Legendre panels for the memory integral
        order: Nodes per panel

    Returns:
        Defect of the PDE
    """
    _check_positive("dx", dx)
    _check_positive("dt_fd", dt_fd)
    if not (x - dx > 0 and t - dt_fd > 0):
        raise InvalidParameterError(f"Need x - dx > 0 and t - dt_fd > 0, got x={x!r}, t={t!r}")
    solution = HeatSolution(lam, h0, panels, order)
    u_t = (solution.temperature(x, t + dt_fd) - solution.temperature(x, t - dt_fd)) / (2.0 * dt_fd)
    around = solution.temperature(np.array([x - dx, x, x + dx]), t)
    u_xx = (around[0] - 2.0 * around[1] + around[2]) / dx ** 2
    return u_t - u_xx + lam * solution.memory(t)
