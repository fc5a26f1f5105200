"""
Numerical checks that the Volterra solution solves the singular ODE

    y''' - lambda^2 y = c t^(-3/2),   y(0) = 1,   y'(0) = 0,
    y''(1) = -lambda / sqrt(pi) + lambda^2 int_0^1 y(t) dt

Differentiating y'' = -lambda / sqrt(pi t) + lambda^2 int_0^t y gives
c = lambda / (2 sqrt(pi)). The coefficient lambda / sqrt(pi) is kept as an
alternative forcing so both can be compared.
"""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_simpson, simpson

from volterraheat.checks import CheckContext, CheckResult
from volterraheat.config import Settings
from volterraheat.errors import InvalidParameterError
from volterraheat.series import ModelParams, eval_y, eval_y_derivative, eval_y_grid
from volterraheat.utils import GridUtils
from volterraheat.verifier import Verifier
from volterraheat.volterra import GridFunction, solve_volterra, volterra_residual

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
# Probe times for the regular part of y'' near 0.
CURVATURE_PROBES = (1e-4, 1e-6, 1e-8)


class ForcingForm(str, Enum):
    """Coefficient of t^(-3/2) in the ODE."""

    HALF = "half"
    UNIT = "unit"

    def coefficient(self, lam: float) -> float:
        if self is ForcingForm.HALF:
            return lam / (2.0 * SQRT_PI)
        return lam / SQRT_PI


def ode_residual(lam: float, t: float, tol: float = 1e-10, forcing: ForcingForm = ForcingForm.HALF) -> float:
    """
    y'''(t) - lambda^2 y(t) - c t^(-3/2) for the series solution

    Args:
        lam: Parameter lambda
        t: Positive time
        tol: Series tolerance
        forcing: Forcing coefficient to test against

    Returns:
        Residual
    """
    if not t > 0:
        raise InvalidParameterError(f"The ODE is singular at t = 0; need t > 0, got {t!r}")
    y = eval_y(lam, t, tol).value
    y3 = eval_y_derivative(lam, t, 3, tol).value
    return y3 - lam ** 2 * y - ForcingForm(forcing).coefficient(lam) * t ** -1.5


def ode_residual_sup(
    lam: float, ts: np.ndarray, tol: float = 1e-10, forcing: ForcingForm = ForcingForm.HALF
) -> float:
    """
    Largest residual on a grid, each scaled by 1 + |c t^(-3/2)| + lambda^2 |y|

    Args:
        lam: Parameter lambda
        ts: Positive times
        tol: Series tolerance
        forcing: Forcing coefficient to test against

    Returns:
        Scaled sup of the residual
    """
    ts = np.asarray(ts, dtype=float)
    y = eval_y_grid(lam, ts, tol)
    y3 = eval_y_grid(lam, ts, tol, order=3)
    source = ForcingForm(forcing).coefficient(lam) * ts ** -1.5
    residual = y3 - lam ** 2 * y - source
    scale = 1.0 + np.abs(source) + lam ** 2 * np.abs(y)
    return float(np.max(np.abs(residual) / scale))


def check_initial_conditions(lam: float, tol: float = 1e-10, probe: float = 1e-6) -> Tuple[float, float, float]:
    """
    Errors in y(0) = 1, y'(0) = 0 and the vanishing regular part of y'' at 0

    y'' itself is singular at 0, so its regular part y'' + lambda / sqrt(pi t)
    is sampled at 1e-4, 1e-6 and 1e-8 and extrapolated linearly to 0.

    Args:
        lam: Parameter lambda
        tol: Series tolerance
        probe: Time at which y' is sampled

    Returns:
        Tuple (|y(0) - 1|, |y'(probe)|, |extrapolated regular part of y''(0)|)
    """
    y0_error = abs(eval_y(lam, 0.0, tol).value - 1.0)
    dy0_error = abs(eval_y_derivative(lam, probe, 1, tol).value)

    probes = np.array(CURVATURE_PROBES)
    regular = np.array([
        eval_y_derivative(lam, t, 2, tol).value + lam / math.sqrt(math.pi * t) for t in probes
    ])
    if np.any(np.diff(np.abs(regular)) > 1e-14):
        logger.warning("Regular part of y'' does not shrink towards 0 for lambda=%r: %s", lam, regular)
    intercept = np.polyfit(probes, regular, 1)[1]
    return y0_error, dy0_error, abs(float(intercept))


def check_integral_bc(lam: float, steps: int = 1000, tol: float = 1e-10) -> float:
    """
    |y''(1) + lambda / sqrt(pi) - lambda^2 int_0^1 y|

    Args:
        lam: Parameter lambda
        steps: Simpson panels on [0, 1], at least 100
        tol: Series tolerance

    Returns:
        Absolute error of the boundary condition
    """
    if int(steps) != steps or steps < 100:
        raise InvalidParameterError(f"steps must be an integer >= 100, got {steps!r}")
    grid = np.linspace(0.0, 1.0, steps + 1)
    integral = simpson(eval_y_grid(lam, grid, tol), dx=1.0 / steps)
    y2 = eval_y_derivative(lam, 1.0, 2, tol).value
    return abs(y2 + lam / SQRT_PI - lam ** 2 * integral)


def check_derivative_identities(
    lam: float, ts: Sequence[float], tol: float = 1e-10, panels: int = 1000
) -> Tuple[float, float]:
    """
    Sup errors of the first and second derivative identities

        y'(t) = lambda^2 int_0^t y(tau)(t - tau) dtau - 2 lambda sqrt(t) / sqrt(pi)
        y''(t) = -lambda / sqrt(pi t) + lambda^2 int_0^t y(tau) dtau

    Left sides come from the differentiated series, right sides from Simpson
    quadrature of the series solution.

    Args:
        lam: Parameter lambda
        ts: Positive times
        tol: Series tolerance
        panels: Simpson panels per integral

    Returns:
        Tuple (first identity sup error, second identity sup error)
    """
    ts = np.asarray(ts, dtype=float)
    if ts.size == 0 or np.any(ts <= 0):
        raise InvalidParameterError("Identity grid points must be positive")
    dy = eval_y_grid(lam, ts, tol, order=1)
    d2y = eval_y_grid(lam, ts, tol, order=2)

    first, second = 0.0, 0.0
    for i, t in enumerate(ts):
        taus = np.linspace(0.0, t, panels + 1)
        y = eval_y_grid(lam, taus, tol)
        plain = simpson(y, dx=t / panels)
        weighted = simpson(y * (t - taus), dx=t / panels)
        first = max(first, abs(dy[i] - (lam ** 2 * weighted - 2.0 * lam * math.sqrt(t) / SQRT_PI)))
        second = max(second, abs(d2y[i] - (-lam / math.sqrt(math.pi * t) + lam ** 2 * plain)))
    return first, second


def integral_form_residual(y: GridFunction, lam: float) -> GridFunction:
    """
    y(t) - 1 - (lambda^2 / 2) int_0^t y(tau)(t - tau)^2 dtau + (4 lambda / (3 sqrt(pi))) t^(3/2)

    The twice-integrated ODE; vanishes for the exact solution.

    Args:
        y: Candidate solution on a grid with at least three values
        lam: Parameter lambda

    Returns:
        Residual on the same grid
    """
    if len(y) < 3:
        raise InvalidParameterError("The integral form needs at least three grid values")
    t = y.times
    # int y(tau)(t - tau)^2 = t^2 A0 - 2 t A1 + A2 with A_k = int tau^k y(tau)
    moments = [cumulative_simpson(y.values * t ** k, dx=y.dt, initial=0.0) for k in range(3)]
    second_moment = t ** 2 * moments[0] - 2.0 * t * moments[1] + moments[2]
    residual = y.values - 1.0 - 0.5 * lam ** 2 * second_moment + 4.0 * lam / (3.0 * SQRT_PI) * t ** 1.5
    return y.with_values(residual)


def check_marching_identity(lam: float, t_max: float, steps: int) -> float:
    """
    Sup of the integral-form residual of the marching solution

    Args:
        lam: Parameter lambda
        t_max: End of the grid
        steps: Number of intervals

    Returns:
        Sup norm of the residual
    """
    return float(np.max(np.abs(integral_form_residual(solve_volterra(lam, t_max, steps), lam).values)))


@dataclass
class EquivalenceReport:
    """
    Residuals of the ODE, its conditions and the integral identities
    """
    lam: float
    t_max: float
    steps: int
    forcing: str
    ode_residual_sup: float
    ic_y0_error: float
    ic_dy0_error: float
    d2y0_error: float
    integral_bc_error: float
    first_identity_sup_error: float
    second_identity_sup_error: float
    volterra_residual_sup: float
    marching_residual_sup: float
    grid: Dict[str, float]
    results: List[CheckResult] = field(default_factory=list)

    MEASUREMENTS = (
        "ode_residual_sup",
        "ic_y0_error",
        "ic_dy0_error",
        "d2y0_error",
        "integral_bc_error",
        "first_identity_sup_error",
        "second_identity_sup_error",
        "volterra_residual_sup",
        "marching_residual_sup",
    )

    @property
    def passed(self) -> bool:
        return Verifier.passed(self.results)

    def measurements(self) -> Dict[str, float]:
        return {name: getattr(self, name) for name in self.MEASUREMENTS}

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to dictionary representation

        Returns:
            Dictionary with report data, keys in a fixed order
        """
        data: Dict[str, Any] = {
            "lambda": self.lam,
            "t_max": self.t_max,
            "steps": self.steps,
            "forcing": self.forcing,
            "pass": self.passed,
        }
        data.update(self.measurements())
        data["grid"] = self.grid
        data["tolerances"] = Verifier.tolerances(self.results)
        data["checks"] = [r.to_dict() for r in self.results]
        return data


def full_equivalence_report(
    params: ModelParams,
    steps: int = 1000,
    tol: float = 1e-10,
    forcing: ForcingForm = ForcingForm.HALF,
    settings: Optional[Settings] = None,
) -> EquivalenceReport:
    """
    Run every equivalence check for one parameter set

    Args:
        params: Model parameters (lambda and t_max are used)
        steps: Grid intervals on [0, t_max]
        tol: Series tolerance
        forcing: Forcing coefficient for the ODE residual
        settings: Check configuration (defaults when omitted)

    Returns:
        Report; failed tolerances are recorded, not raised
    """
    lam, t_max = params.lam, params.t_max
    forcing = ForcingForm(forcing)
    logger.debug("Equivalence report for lambda=%r, t_max=%r, steps=%d", lam, t_max, steps)

    ode_sup = ode_residual_sup(lam, GridUtils.log_spaced(t_max * 1e-3, t_max, 64), tol, forcing)
    y0_error, dy0_error, d2y0_error = check_initial_conditions(lam, tol)
    bc_error = check_integral_bc(lam, max(int(steps), 100), tol)
    first, second = check_derivative_identities(lam, GridUtils.uniform(t_max / 20, t_max, 64), tol, steps)

    series_grid = GridFunction.from_function(lambda ts: eval_y_grid(lam, ts, tol), t_max, steps)
    phi_sup = float(np.max(np.abs(volterra_residual(series_grid, lam).values)))
    marching_sup = check_marching_identity(lam, t_max, steps)

    report = EquivalenceReport(
        lam=lam,
        t_max=t_max,
        steps=int(steps),
        forcing=forcing.value,
        ode_residual_sup=ode_sup,
        ic_y0_error=y0_error,
        ic_dy0_error=dy0_error,
        d2y0_error=d2y0_error,
        integral_bc_error=bc_error,
        first_identity_sup_error=first,
        second_identity_sup_error=second,
        volterra_residual_sup=phi_sup,
        marching_residual_sup=marching_sup,
        grid=series_grid.descriptor(),
    )
    context = CheckContext(
        lam=lam, t_max=t_max, steps=int(steps), h0=params.h0, epsilon=params.epsilon,
        measurements=report.measurements(),
    )
    report.results = Verifier(settings).run("equivalence", context)
    return report
