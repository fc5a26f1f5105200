"""
Configuration management for volterraheat
"""
import json
import math
import os
from typing import Any, Dict, List, Mapping, Optional

from volterraheat.errors import ConfigurationError

TERM_CAP_ENV = "VOLTERRA_TERM_CAP"
DEFAULT_TERM_CAP = 10000


def default_term_cap(environ: Optional[Mapping[str, str]] = None) -> int:
    """
    Series term cap, honouring the VOLTERRA_TERM_CAP override

    Args:
        environ: Environment mapping (defaults to os.environ)

    Returns:
        Maximum number of series terms

    Raises:
        ConfigurationError: If the override is not a positive integer
    """
    environ = os.environ if environ is None else environ
    raw = environ.get(TERM_CAP_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_TERM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ConfigurationError(f"{TERM_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise ConfigurationError(f"{TERM_CAP_ENV} must be positive, got {cap}")
    return cap


class Settings:
    """
    Numerical defaults and check configuration for a run
    """

    def __init__(
        self,
        tol: float = 1e-10,
        steps: int = 1000,
        t_max: float = 1.0,
        h0: float = 1.0,
        epsilon: float = 0.5,
        x_max: Optional[float] = None,
        term_cap: int = DEFAULT_TERM_CAP,
        grid_points: int = 512,
        lambda_samples: int = 9,
        x_points: int = 64,
        u_time_points: int = 64,
        quad_panels: int = 8,
        quad_order: int = 16,
        workers: int = 1,
        disabled_checks: List[str] = None,
        check_configs: Dict[str, Dict[str, Any]] = None,
    ):
        """
        Initialize settings

        Args:
            tol: Series tolerance
            steps: Uniform grid steps on [0, t_max]
            t_max: Time horizon
            h0: Initial temperature
            epsilon: Safety fraction for the admissible parameter range
            x_max: Spatial extent for heat sweeps (8 sqrt(t_max) when unset)
            term_cap: Series term cap
            grid_points: Time points used for sup norms
            lambda_samples: Parameter samples for dependence checks
            x_points: Spatial points for heat sweeps
            u_time_points: Time points used for temperature norms
            quad_panels: Gauss-Legendre panels for the temperature integral
            quad_order: Gauss-Legendre nodes per panel
            workers: Threads used for per-parameter work
            disabled_checks: Check IDs to skip
            check_configs: Option overrides per check ID
        """
        self.tol = tol
        self.steps = steps
        self.t_max = t_max
        self.h0 = h0
        self.epsilon = epsilon
        self.x_max = x_max
        self.term_cap = term_cap
        self.grid_points = grid_points
        self.lambda_samples = lambda_samples
        self.x_points = x_points
        self.u_time_points = u_time_points
        self.quad_panels = quad_panels
        self.quad_order = quad_order
        self.workers = workers
        self.disabled_checks = set(disabled_checks or [])
        self.check_configs = check_configs or {}
        self.validate()

    @classmethod
    def create_default(cls) -> "Settings":
        """
        Create default settings

        Returns:
            Default settings
        """
        return cls()

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Settings":
        """
        Create settings from a dictionary

        Args:
            data: Dictionary with settings values; unknown keys are rejected

        Returns:
            Settings instance
        """
        known = set(cls.create_default().to_dict())
        unknown = set(data) - known
        if unknown:
            raise ConfigurationError(f"Unknown settings: {', '.join(sorted(unknown))}")
        values = {k: v for k, v in data.items() if k not in ("checks", "disabled_checks")}
        return cls(
            disabled_checks=data.get("disabled_checks"),
            check_configs=data.get("checks", {}),
            **values,
        )

    @classmethod
    def from_env(cls, environ: Optional[Mapping[str, str]] = None, **overrides: Any) -> "Settings":
        """
        Create settings from defaults, the environment and explicit overrides

        Args:
            environ: Environment mapping (defaults to os.environ)
            **overrides: Values taking precedence over defaults

        Returns:
            Settings instance
        """
        overrides = {k: v for k, v in overrides.items() if v is not None}
        overrides.setdefault("term_cap", default_term_cap(environ))
        return cls(**overrides)

    def validate(self) -> None:
        """
        Check value ranges

        Raises:
            ConfigurationError: If a value is out of range
        """
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise ConfigurationError(f"tol must be positive and finite, got {self.tol!r}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ConfigurationError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not (self.t_max > 0 and math.isfinite(self.t_max)):
            raise ConfigurationError(f"t_max must be positive and finite, got {self.t_max!r}")
        if not (self.h0 > 0 and math.isfinite(self.h0)):
            raise ConfigurationError(f"h0 must be positive and finite, got {self.h0!r}")
        if not 0 < self.epsilon < 1:
            raise ConfigurationError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        if self.x_max is not None and not (self.x_max > 0 and math.isfinite(self.x_max)):
            raise ConfigurationError(f"x_max must be positive and finite, got {self.x_max!r}")
        for name in ("term_cap", "grid_points", "lambda_samples", "x_points",
                     "u_time_points", "quad_panels", "quad_order", "workers"):
            value = getattr(self, name)
            if int(value) != value or value < 1:
                raise ConfigurationError(f"{name} must be a positive integer, got {value!r}")
        if self.grid_points < 2 or self.lambda_samples < 2:
            raise ConfigurationError("grid_points and lambda_samples must be at least 2")

    @property
    def spatial_extent(self) -> float:
        """Spatial extent of heat sweeps"""
        return self.x_max if self.x_max is not None else 8.0 * math.sqrt(self.t_max)

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert the settings to a dictionary

        Returns:
            Dictionary representation of the settings
        """
        return {
            "tol": self.tol,
            "steps": self.steps,
            "t_max": self.t_max,
            "h0": self.h0,
            "epsilon": self.epsilon,
            "x_max": self.x_max,
            "term_cap": self.term_cap,
            "grid_points": self.grid_points,
            "lambda_samples": self.lambda_samples,
            "x_points": self.x_points,
            "u_time_points": self.u_time_points,
            "quad_panels": self.quad_panels,
            "quad_order": self.quad_order,
            "workers": self.workers,
            "disabled_checks": sorted(self.disabled_checks),
            "checks": self.check_configs,
        }

    def to_json(self) -> str:
        """
        Convert the settings to a JSON string

        Returns:
            JSON representation of the settings
        """
        return json.dumps(self.to_dict(), indent=2)

    def disable_check(self, check_id: str) -> None:
        """
        Disable a check

        Args:
            check_id: ID of the check to disable
        """
        self.disabled_checks.add(check_id)

    def enable_check(self, check_id: str) -> None:
        """
        Enable a check

        Args:
            check_id: ID of the check to enable
        """
        self.disabled_checks.discard(check_id)

    def set_check_config(self, check_id: str, options: Dict[str, Any]) -> None:
        """
        Set option overrides for a check

        Args:
            check_id: ID of the check
            options: Option values, e.g. {"tolerance": 1e-8}
        """
        self.check_configs[check_id] = options
