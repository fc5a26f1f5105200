"""
Utility functions for volterraheat
"""
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, List, TypeVar

import numpy as np

from volterraheat.errors import InvalidParameterError

T = TypeVar("T")
R = TypeVar("R")


class GridUtils:
    """
    Helpers for building sample points
    """

    @staticmethod
    def uniform(start: float, stop: float, count: int) -> np.ndarray:
        """
        Uniformly spaced points including both ends

        Args:
            start: First point
            stop: Last point
            count: Number of points (at least 2)

        Returns:
            Array of points
        """
        if count < 2 or not stop > start:
            raise InvalidParameterError(f"Need count >= 2 and stop > start, got {count}, [{start}, {stop}]")
        return np.linspace(start, stop, count)

    @staticmethod
    def log_spaced(start: float, stop: float, count: int) -> np.ndarray:
        """
        Logarithmically spaced points including both ends

        Args:
            start: First point (positive)
            stop: Last point
            count: Number of points (at least 2)

        Returns:
            Array of points
        """
        if not 0 < start < stop or count < 2:
            raise InvalidParameterError(f"Need 0 < start < stop and count >= 2, got [{start}, {stop}], {count}")
        return np.geomspace(start, stop, count)

    @staticmethod
    def spatial(x_max: float, count: int, far_field: float) -> np.ndarray:
        """
        Points on [0, x_max] plus one far-field point

        Args:
            x_max: Extent of the uniform part
            count: Number of uniform points
            far_field: Extra point beyond x_max

        Returns:
            Array of points, ascending
        """
        points = GridUtils.uniform(0.0, x_max, count)
        if far_field > x_max:
            points = np.append(points, far_field)
        return points


class NumberUtils:
    """
    Helpers for numbers in reports
    """

    @staticmethod
    def format_float(value: float) -> str:
        """
        Format a float with 17 significant digits

        Args:
            value: Number to format

        Returns:
            Text representation
        """
        return format(value, ".17g")


def ordered_map(fn: Callable[[T], R], items: Iterable[T], workers: int = 1) -> List[R]:
    """
    Apply a function to every item, in threads when workers > 1

    Args:
        fn: Function to apply
        items: Inputs
        workers: Number of threads

    Returns:
        Results in input order
    """
    items = list(items)
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
