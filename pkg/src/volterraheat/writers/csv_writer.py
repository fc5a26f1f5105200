"""
CSV output for tabulated curves
"""
from typing import Any, TextIO

import numpy as np
import pandas as pd

from volterraheat.errors import NumericalError
from volterraheat.utils import NumberUtils
from volterraheat.writers.base import Writer


class CsvWriter(Writer):
    """
    Header row, LF line endings, floats with 17 significant digits
    """

    id = "csv"
    name = "CSV"
    description = "Comma-separated table with a header row"
    extension = ".csv"

    def accepts(self, payload: Any) -> bool:
        return isinstance(payload, pd.DataFrame)

    def write(self, payload: pd.DataFrame, stream: TextIO) -> None:
        numeric = payload.select_dtypes(include=[np.number])
        # NaN marks a missing entry and is written as an empty field
        if np.any(np.isinf(numeric.to_numpy(dtype=float))):
            raise NumericalError("Refusing to write infinite values")
        payload.to_csv(
            stream,
            index=False,
            float_format=NumberUtils.format_float,
            lineterminator="\n",
            na_rep="",
        )
