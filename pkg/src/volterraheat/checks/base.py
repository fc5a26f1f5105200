"""
Base class and utilities for tolerance checks
"""
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional


@dataclass
class CheckOption:
    """
    Configuration option for a check
    """
    name: str
    description: str
    default: Any
    choices: Optional[List[Any]] = None


@dataclass
class CheckContext:
    """
    Measured quantities and run parameters a check is judged against
    """
    lam: float
    t_max: float
    steps: int
    h0: float = 1.0
    epsilon: float = 0.5
    measurements: Dict[str, float] = field(default_factory=dict)
    details: Dict[str, Dict[str, Any]] = field(default_factory=dict)

    @property
    def dt(self) -> float:
        return self.t_max / self.steps


@dataclass
class CheckResult:
    """
    Outcome of a check
    """
    check_id: str
    measured: float
    bound: float
    passed: bool
    severity: str = "error"  # error, warning
    message: str = ""
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def margin(self) -> float:
        return self.bound - self.measured

    def to_dict(self) -> Dict[str, Any]:
        """
        Convert to dictionary representation

        Returns:
            Dictionary with result data
        """
        data = {
            "check_id": self.check_id,
            "measured": self.measured,
            "bound": self.bound,
            "margin": self.margin,
            "passed": self.passed,
            "severity": self.severity,
            "message": self.message,
        }
        if self.details:
            data["details"] = self.details
        return data


class Check(ABC):
    """
    Base class for all checks

    A check reads one measurement from the context and compares it with a
    bound derived from the run parameters and its options.
    """

    # Class attributes to be overridden by subclasses
    id: str = "base-check"
    name: str = "Base Check"
    description: str = "Base class for all checks"
    category: str = ""
    measurement: str = ""
    options: Dict[str, CheckOption] = {}
    default_severity: str = "error"

    def __init__(self, config: Dict[str, Any] = None):
        """
        Initialize a check

        Args:
            config: Option overrides for this check
        """
        self.config = config or {}
        self.severity = self.config.get("severity", self.default_severity)

    def __str__(self) -> str:
        """String representation"""
        return f"{self.id} ({self.name})"

    def get_option(self, name: str) -> Any:
        """
        Get the value of an option

        Args:
            name: Name of the option

        Returns:
            Value of the option, or default if not set
        """
        if name in self.options:
            return self.config.get(name, self.options[name].default)
        return None

    def applies_to(self, context: CheckContext) -> bool:
        """
        Check whether the context carries this check's measurement

        Args:
            context: Check context

        Returns:
            True if the check can run
        """
        return self.measurement in context.measurements

    @abstractmethod
    def bound(self, context: CheckContext) -> float:
        """
        Largest acceptable measurement

        Args:
            context: Check context

        Returns:
            Bound for the measurement
        """
        pass

    def check(self, context: CheckContext) -> CheckResult:
        """
        Judge the measurement against the bound

        Args:
            context: Check context

        Returns:
            Check result
        """
        measured = context.measurements[self.measurement]
        bound = self.bound(context)
        passed = math.isfinite(measured) and measured <= bound
        verdict = "within" if passed else "exceeds"
        return CheckResult(
            check_id=self.id,
            measured=measured,
            bound=bound,
            passed=passed,
            severity=self.severity,
            message=f"{self.name}: {measured:.3e} {verdict} {bound:.3e}",
            details=dict(context.details.get(self.measurement, {})),
        )
