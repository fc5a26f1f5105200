"""
volterraheat - Series and product-integration solutions of a weakly singular
Volterra equation, its singular ODE form and a nonclassical heat problem
"""

__version__ = "0.1.0"
__license__ = "MIT"

from volterraheat.config import Settings
from volterraheat.errors import (
    DivisorUnderflowError,
    InvalidParameterError,
    NumericalError,
    TermCapExceededError,
    VolterraHeatError,
)
from volterraheat.series import ModelParams, SeriesEvaluation, eval_I, eval_J, eval_y, eval_y_derivative
from volterraheat.volterra import GridFunction, solve_volterra
from volterraheat.verifier import Verifier

__all__ = [
    "Settings",
    "ModelParams",
    "SeriesEvaluation",
    "GridFunction",
    "Verifier",
    "eval_I",
    "eval_J",
    "eval_y",
    "eval_y_derivative",
    "solve_volterra",
    "VolterraHeatError",
    "InvalidParameterError",
    "NumericalError",
    "TermCapExceededError",
    "DivisorUnderflowError",
]
