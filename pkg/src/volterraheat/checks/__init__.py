"""
Tolerance checks for the equivalence and dependence reports
"""
from typing import List, Optional, Type

from volterraheat.checks.base import Check, CheckContext, CheckOption, CheckResult
from volterraheat.checks.dependence import (
    GLipschitzCheck,
    GNormCheck,
    PotentialLipschitzCheck,
    PotentialNormCheck,
    TemperatureDeviationCheck,
    TemperatureLipschitzCheck,
    TemperatureNormCheck,
)
from volterraheat.checks.equivalence import (
    FirstDerivativeIdentityCheck,
    InitialCurvatureCheck,
    InitialSlopeCheck,
    InitialValueCheck,
    IntegralBoundaryCheck,
    MarchingIdentityCheck,
    OdeResidualCheck,
    SecondDerivativeIdentityCheck,
    VolterraResidualCheck,
)

__all__ = ["Check", "CheckContext", "CheckOption", "CheckResult", "get_all_checks", "register_check"]

# Registry of all available checks, in report order
_CHECKS: List[Type[Check]] = [
    OdeResidualCheck,
    InitialValueCheck,
    InitialSlopeCheck,
    InitialCurvatureCheck,
    IntegralBoundaryCheck,
    FirstDerivativeIdentityCheck,
    SecondDerivativeIdentityCheck,
    VolterraResidualCheck,
    MarchingIdentityCheck,
    GNormCheck,
    GLipschitzCheck,
    PotentialNormCheck,
    PotentialLipschitzCheck,
    TemperatureNormCheck,
    TemperatureDeviationCheck,
    TemperatureLipschitzCheck,
]


def get_all_checks(category: Optional[str] = None) -> List[Type[Check]]:
    """
    Get all available check classes

    Args:
        category: Only checks of this category when given

    Returns:
        List of check classes
    """
    return [cls for cls in _CHECKS if category is None or cls.category == category]


def register_check(check_cls: Type[Check]) -> None:
    """
    Register a custom check

    Args:
        check_cls: Check class to register
    """
    if check_cls not in _CHECKS:
        _CHECKS.append(check_cls)
