"""
Special functions and factorial-type factors in stable form

Factorials are carried in the log domain because the series terms overflow
in linear form long before the sums converge for large lambda^2 t^3.
"""
import math
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import special

from volterraheat.errors import InvalidParameterError

ArrayLike = Union[float, np.ndarray]

# Largest n with n! below 2**64; log of the exact integer is used up to here.
_EXACT_FACTORIAL_MAX = 20
# Largest odd m whose double factorial is evaluated as an exact product.
_EXACT_DOUBLE_FACTORIAL_MAX = 41


def erf(x: ArrayLike) -> ArrayLike:
    """
    Error function, odd by construction

    Args:
        x: Finite real argument (scalar or array)

    Returns:
        erf(x), with erf(-x) == -erf(x) bit for bit
    """
    magnitude = special.erf(np.abs(x))
    result = np.copysign(magnitude, x)
    if np.ndim(result) == 0:
        return float(result)
    return result


@lru_cache(maxsize=4096)
def log_factorial(n: int) -> float:
    """
    Natural log of n!

    Args:
        n: Nonnegative integer

    Returns:
        ln(n!)
    """
    if int(n) != n or n < 0:
        raise InvalidParameterError(f"log_factorial needs a nonnegative integer, got {n!r}")
    n = int(n)
    if n <= _EXACT_FACTORIAL_MAX:
        return math.log(math.factorial(n))
    return float(special.gammaln(n + 1))


@lru_cache(maxsize=4096)
def log_odd_double_factorial(m: int) -> float:
    """
    Natural log of m!! = m (m-2) ... 3 1 for odd m

    Args:
        m: Odd positive integer

    Returns:
        ln(m!!)

    Raises:
        InvalidParameterError: If m is even or not positive
    """
    if int(m) != m or m < 1 or m % 2 == 0:
        raise InvalidParameterError(f"log_odd_double_factorial needs an odd positive integer, got {m!r}")
    m = int(m)
    if m <= _EXACT_DOUBLE_FACTORIAL_MAX:
        return math.log(math.prod(range(m, 0, -2)))
    # m!! = 2^((m+1)/2) Gamma(m/2 + 1) / sqrt(pi)
    return (m + 1) / 2 * math.log(2.0) + float(special.gammaln(m / 2 + 1)) - 0.5 * math.log(math.pi)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise InvalidParameterError(f"log_gamma needs a positive argument, got {x!r}")
    return float(special.gammaln(x))


def gamma(x: float) -> float:
    """Gamma(x) for x > 0."""
    if not x > 0:
        raise InvalidParameterError(f"gamma needs a positive argument, got {x!r}")
    return float(special.gamma(x))


def beta(x: float, y: float) -> float:
    """
    Beta function B(x, y) = Gamma(x) Gamma(y) / Gamma(x + y)

    Args:
        x: Positive real
        y: Positive real

    Returns:
        B(x, y)

    Raises:
        InvalidParameterError: If either argument is not positive
    """
    if not (x > 0 and y > 0):
        raise InvalidParameterError(f"beta needs positive arguments, got ({x!r}, {y!r})")
    return float(special.beta(x, y))
