"""
JSON output for reports
"""
import json
from typing import Any, TextIO

import numpy as np

from volterraheat.writers.base import Writer


def _to_builtin(value: Any) -> Any:
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


class JsonWriter(Writer):
    """
    Indented JSON, keys in insertion order, floats in shortest round-trip form
    """

    id = "json"
    name = "JSON"
    description = "Indented JSON document"
    extension = ".json"

    def accepts(self, payload: Any) -> bool:
        return isinstance(payload, (dict, list))

    def write(self, payload: Any, stream: TextIO) -> None:
        # allow_nan=False rejects NaN and infinities
        text = json.dumps(payload, indent=self.get_option("indent", 2), allow_nan=False, default=_to_builtin)
        stream.write(text + "\n")
