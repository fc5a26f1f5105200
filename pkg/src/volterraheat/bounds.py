"""
Admissible parameter range and the boundedness and Lipschitz estimates

For |lambda| <= lambda_threshold(epsilon, T) = (3 sqrt(pi) / 4) epsilon / T^(3/2)
the solution g, the potential U and the temperature u obey explicit bounds.
The measured quantities are discrete maxima over sample grids, compared with
the bounds plus a small slack.
"""
import itertools
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from volterraheat.config import Settings
from volterraheat.errors import InvalidParameterError
from volterraheat.heat import HeatSolution
from volterraheat.series import ModelParams, PotentialSeries, eval_y_grid, evaluate
from volterraheat.utils import GridUtils, ordered_map

logger = logging.getLogger(__name__)

SQRT_PI = math.sqrt(math.pi)
# Far-field point, in units of sqrt(T), appended to spatial sweeps
FAR_FIELD = 50.0


def _check_range(epsilon: float, t_max: float) -> None:
    if not 0 < epsilon < 1:
        raise InvalidParameterError(f"epsilon must lie in (0, 1), got {epsilon!r}")
    if not (t_max > 0 and math.isfinite(t_max)):
        raise InvalidParameterError(f"t_max must be positive and finite, got {t_max!r}")


def lambda_threshold(epsilon: float, t_max: float) -> float:
    """
    (3 sqrt(pi) / 4) epsilon / T^(3/2)

    Args:
        epsilon: Safety fraction in (0, 1)
        t_max: Time horizon

    Returns:
        Largest admissible |lambda|
    """
    _check_range(epsilon, t_max)
    return 3.0 * SQRT_PI / 4.0 * epsilon / t_max ** 1.5


def lambda_samples(epsilon: float, t_max: float, count: int) -> np.ndarray:
    """Uniform samples of [-threshold, threshold], both ends included."""
    if int(count) != count or count < 2:
        raise InvalidParameterError(f"Need at least two lambda samples, got {count!r}")
    threshold = lambda_threshold(epsilon, t_max)
    return np.linspace(-threshold, threshold, int(count))


def sup_norm(f: Any) -> float:
    """
    max |f| over the samples of a grid function or array

    Args:
        f: GridFunction or array of values

    Returns:
        Discrete sup norm
    """
    values = np.asarray(getattr(f, "values", f), dtype=float)
    if values.size == 0:
        raise InvalidParameterError("sup_norm needs at least one value")
    return float(np.max(np.abs(values)))


def g_norm_bound(epsilon: float) -> float:
    return 1.0 / (1.0 - epsilon)


def g_lipschitz_bound(epsilon: float, t_max: float) -> float:
    return 4.0 / (3.0 * SQRT_PI) * t_max ** 1.5 / (1.0 - epsilon) ** 2


def U_norm_bound(epsilon: float, t_max: float, h0: float) -> float:
    return 2.0 * h0 * math.sqrt(t_max) / (SQRT_PI * (1.0 - epsilon))


def U_lipschitz_bound(epsilon: float, t_max: float, h0: float) -> float:
    return 8.0 * h0 * t_max ** 2 / (3.0 * math.pi * (1.0 - epsilon) ** 2)


def u_norm_bound(epsilon: float, h0: float) -> float:
    return h0 * (1.0 + 3.0 * epsilon / (2.0 * (1.0 - epsilon)))


def u_dev_bound(epsilon: float, t_max: float, h0: float) -> float:
    """Bound on max |u_lambda - u_0| per unit |lambda|."""
    return 2.0 * h0 / SQRT_PI * t_max ** 1.5 / (1.0 - epsilon)


def u_lipschitz_bound(epsilon: float, t_max: float, h0: float) -> float:
    return 2.0 * h0 * math.sqrt(t_max) / (SQRT_PI * (1.0 - epsilon)) * (epsilon * math.pi / (1.0 - epsilon) + t_max)


def _largest_ratio(lams: np.ndarray, fields: List[np.ndarray]) -> Dict[str, float]:
    # Pairwise sup |f2 - f1| / |lambda2 - lambda1|; equal lambdas are skipped.
    best = {"ratio": 0.0, "lambda_1": math.nan, "lambda_2": math.nan}
    for i, j in itertools.combinations(range(len(lams)), 2):
        gap = abs(lams[j] - lams[i])
        if gap == 0:
            continue
        ratio = float(np.max(np.abs(fields[j] - fields[i]))) / gap
        if ratio > best["ratio"] or math.isnan(best["lambda_1"]):
            best = {"ratio": ratio, "lambda_1": float(lams[i]), "lambda_2": float(lams[j])}
    return best


def _largest_norm(lams: np.ndarray, norms: List[float]) -> Dict[str, float]:
    k = int(np.argmax(norms))
    return {"norm": float(norms[k]), "lambda": float(lams[k])}


@dataclass
class BoundsReport:
    """
    Bounds and measured quantities; heat or solution parts may be absent
    """
    epsilon: float
    t_max: float
    h0: float
    lambda_threshold: float
    lambda_samples: List[float]
    g_norm_bound: Optional[float] = None
    g_norm_measured: Optional[float] = None
    g_lipschitz_bound: Optional[float] = None
    g_lipschitz_measured: Optional[float] = None
    U_norm_bound: Optional[float] = None
    U_norm_measured: Optional[float] = None
    U_lipschitz_bound: Optional[float] = None
    U_lipschitz_measured: Optional[float] = None
    u_norm_bound: Optional[float] = None
    u_norm_measured: Optional[float] = None
    u_dev_bound: Optional[float] = None
    u_dev_measured: Optional[float] = None
    u_lipschitz_bound: Optional[float] = None
    u_lipschitz_measured: Optional[float] = None
    details: Dict[str, Dict[str, Any]] = field(default_factory=dict)
    results: list = field(default_factory=list)

    QUANTITIES = ("g_norm", "g_lipschitz", "U_norm", "U_lipschitz", "u_norm", "u_dev", "u_lipschitz")

    def measurements(self) -> Dict[str, float]:
        names = (f"{q}_measured" for q in self.QUANTITIES)
        return {name: getattr(self, name) for name in names if getattr(self, name) is not None}

    def merge(self, other: "BoundsReport") -> "BoundsReport":
        """
        Combine with a report on the same configuration

        Args:
            other: Report whose present fields take precedence

        Returns:
            New merged report (results are not carried over)
        """
        values = {}
        for quantity in self.QUANTITIES:
            for suffix in ("bound", "measured"):
                name = f"{quantity}_{suffix}"
                mine, theirs = getattr(self, name), getattr(other, name)
                values[name] = theirs if theirs is not None else mine
        return BoundsReport(
            epsilon=self.epsilon,
            t_max=self.t_max,
            h0=other.h0,
            lambda_threshold=self.lambda_threshold,
            lambda_samples=self.lambda_samples,
            details={**self.details, **other.details},
            **values,
        )

    @property
    def passed(self) -> bool:
        from volterraheat.verifier import Verifier

        return Verifier.passed(self.results)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to dictionary representation, omitting absent quantities

        Returns:
            Dictionary with report data
        """
        from volterraheat.verifier import Verifier

        data: Dict[str, Any] = {
            "epsilon": self.epsilon,
            "t_max": self.t_max,
            "h0": self.h0,
            "lambda_threshold": self.lambda_threshold,
            "lambda_samples": self.lambda_samples,
            "pass": self.passed,
        }
        for quantity in self.QUANTITIES:
            for suffix in ("bound", "measured"):
                value = getattr(self, f"{quantity}_{suffix}")
                if value is not None:
                    data[f"{quantity}_{suffix}"] = value
        data["tolerances"] = Verifier.tolerances(self.results)
        data["checks"] = [r.to_dict() for r in self.results]
        return data


def _judge(report: BoundsReport, settings: Optional[Settings]) -> BoundsReport:
    from volterraheat.checks import CheckContext
    from volterraheat.verifier import Verifier

    measurements = report.measurements()
    context = CheckContext(
        lam=report.lambda_threshold,
        t_max=report.t_max,
        steps=1,
        h0=report.h0,
        epsilon=report.epsilon,
        measurements=measurements,
        details={f"{q}_measured": report.details[q] for q in report.QUANTITIES if q in report.details},
    )
    report.results = Verifier(settings).run("dependence", context)
    return report


def verify_solution_bounds(
    epsilon: float,
    t_max: float,
    n_lambda_samples: int = 9,
    steps: int = 512,
    tol: float = 1e-12,
    settings: Optional[Settings] = None,
) -> BoundsReport:
    """
    Measure max |g_lambda| and the pairwise Lipschitz ratios of g

    Args:
        epsilon: Safety fraction in (0, 1)
        t_max: Time horizon
        n_lambda_samples: Samples of [-threshold, threshold]
        steps: Intervals of the time grid for sup norms
        tol: Series tolerance
        settings: Check configuration and worker count

    Returns:
        Report with the g quantities judged
    """
    lams = lambda_samples(epsilon, t_max, n_lambda_samples)
    ts = GridUtils.uniform(0.0, t_max, int(steps) + 1)
    workers = settings.workers if settings else 1
    fields = ordered_map(lambda lam: eval_y_grid(float(lam), ts, tol), lams, workers)
    norms = [sup_norm(f) for f in fields]

    ordered = np.argsort(np.abs(lams), kind="stable")
    negative = [norms[k] for k in ordered if lams[k] <= 0]
    if any(b < a - 1e-12 for a, b in zip(negative, negative[1:])):
        logger.warning("max |g| is not nondecreasing in |lambda| for lambda <= 0: %s", negative)

    lipschitz = _largest_ratio(lams, fields)
    report = BoundsReport(
        epsilon=epsilon,
        t_max=t_max,
        h0=1.0,
        lambda_threshold=lambda_threshold(epsilon, t_max),
        lambda_samples=[float(v) for v in lams],
        g_norm_bound=g_norm_bound(epsilon),
        g_norm_measured=max(norms),
        g_lipschitz_bound=g_lipschitz_bound(epsilon, t_max),
        g_lipschitz_measured=lipschitz["ratio"],
        details={"g_norm": _largest_norm(lams, norms), "g_lipschitz": lipschitz},
    )
    return _judge(report, settings)


def verify_heat_bounds(
    epsilon: float,
    t_max: float,
    h0: float = 1.0,
    n_lambda_samples: int = 9,
    steps: int = 512,
    x_grid: Optional[Sequence[float]] = None,
    u_time_points: int = 64,
    panels: int = 8,
    order: int = 16,
    tol: float = 1e-12,
    settings: Optional[Settings] = None,
) -> BoundsReport:
    """
    Measure the norms of U and u, the deviation from u_0 and the Lipschitz ratios

    Args:
        epsilon: Safety fraction in (0, 1)
        t_max: Time horizon
        h0: Initial temperature
        n_lambda_samples: Samples of [-threshold, threshold]
        steps: Intervals of the time grid for U
        x_grid: Positions for u (64 points on [0, 8 sqrt(T)] plus a far-field point when omitted)
        u_time_points: Times in (0, T] for u
        panels: Gauss-Legendre panels for u
        order: Nodes per panel
        tol: Series tolerance
        settings: Check configuration and worker count

    Returns:
        Report with the U and u quantities judged
    """
    if not (h0 > 0 and math.isfinite(h0)):
        raise InvalidParameterError(f"h0 must be positive and finite, got {h0!r}")
    lams = lambda_samples(epsilon, t_max, n_lambda_samples)
    if x_grid is None:
        x_grid = GridUtils.spatial(8.0 * math.sqrt(t_max), 64, FAR_FIELD * math.sqrt(t_max))
    xs = np.asarray(x_grid, dtype=float)
    if xs.size == 0 or np.any(xs < 0) or not np.all(np.isfinite(xs)):
        raise InvalidParameterError("x_grid must be finite, nonnegative and nonempty")
    ts = GridUtils.uniform(0.0, t_max, int(steps) + 1)
    u_ts = GridUtils.uniform(t_max / u_time_points, t_max, u_time_points) if u_time_points > 1 else np.array([t_max])

    def measure(lam: float):
        potential = h0 * evaluate(PotentialSeries(float(lam)), ts, 0, tol)[0]
        temperature = HeatSolution(float(lam), h0, panels, order, tol).sweep(xs, u_ts)
        return potential, temperature

    workers = settings.workers if settings else 1
    measured = ordered_map(measure, lams, workers)
    potentials = [m[0] for m in measured]
    temperatures = [m[1] for m in measured]
    baseline = HeatSolution(0.0, h0).sweep(xs, u_ts)

    U_norms = [sup_norm(U) for U in potentials]
    u_norms = [sup_norm(u) for u in temperatures]
    deviations = [sup_norm(u - baseline) / abs(lam) for lam, u in zip(lams, temperatures) if lam != 0]
    nonzero = np.array([lam for lam in lams if lam != 0])

    U_lipschitz = _largest_ratio(lams, potentials)
    u_lipschitz = _largest_ratio(lams, temperatures)
    report = BoundsReport(
        epsilon=epsilon,
        t_max=t_max,
        h0=h0,
        lambda_threshold=lambda_threshold(epsilon, t_max),
        lambda_samples=[float(v) for v in lams],
        U_norm_bound=U_norm_bound(epsilon, t_max, h0),
        U_norm_measured=max(U_norms),
        U_lipschitz_bound=U_lipschitz_bound(epsilon, t_max, h0),
        U_lipschitz_measured=U_lipschitz["ratio"],
        u_norm_bound=u_norm_bound(epsilon, h0),
        u_norm_measured=max(u_norms),
        u_dev_bound=u_dev_bound(epsilon, t_max, h0),
        u_dev_measured=max(deviations, default=0.0),
        u_lipschitz_bound=u_lipschitz_bound(epsilon, t_max, h0),
        u_lipschitz_measured=u_lipschitz["ratio"],
        details={
            "U_norm": _largest_norm(lams, U_norms),
            "U_lipschitz": U_lipschitz,
            "u_norm": _largest_norm(lams, u_norms),
            "u_dev": _largest_norm(nonzero, deviations) if deviations else {"norm": 0.0},
            "u_lipschitz": u_lipschitz,
        },
    )
    logger.debug("Heat bounds for epsilon=%r, t_max=%r, h0=%r: %d lambdas", epsilon, t_max, h0, len(lams))
    return _judge(report, settings)


def bounds_report(params: ModelParams, settings: Optional[Settings] = None) -> BoundsReport:
    """
    All bounds for one (epsilon, T, h0) configuration

    Args:
        params: Model parameters (epsilon, t_max and h0 are used)
        settings: Grid sizes, check configuration and worker count

    Returns:
        Full report
    """
    settings = settings or Settings.create_default()
    x_grid = GridUtils.spatial(
        8.0 * math.sqrt(params.t_max) if settings.x_max is None else settings.x_max,
        settings.x_points,
        FAR_FIELD * math.sqrt(params.t_max),
    )
    solution = verify_solution_bounds(
        params.epsilon, params.t_max, settings.lambda_samples, settings.grid_points, settings=settings,
    )
    heat = verify_heat_bounds(
        params.epsilon, params.t_max, params.h0, settings.lambda_samples, settings.grid_points,
        x_grid=x_grid, u_time_points=settings.u_time_points,
        panels=settings.quad_panels, order=settings.quad_order, settings=settings,
    )
    return _judge(solution.merge(heat), settings)
