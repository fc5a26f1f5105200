"""
Output writers for curves and reports
"""
from typing import List, Optional, Type

from volterraheat.writers.base import Writer
from volterraheat.writers.csv_writer import CsvWriter
from volterraheat.writers.json_writer import JsonWriter

__all__ = ["Writer", "CsvWriter", "JsonWriter", "get_all_writers", "get_writer", "register_writer"]

# Registry of all available writers
_WRITERS: List[Type[Writer]] = [
    CsvWriter,
    JsonWriter,
]


def get_all_writers() -> List[Type[Writer]]:
    """
    Get all available writer classes

    Returns:
        List of writer classes
    """
    return _WRITERS.copy()


def get_writer(writer_id: str) -> Optional[Writer]:
    """
    Instantiate a writer by ID

    Args:
        writer_id: ID of the writer, e.g. "csv"

    Returns:
        Writer instance or None if unknown
    """
    for writer_cls in _WRITERS:
        if writer_cls.id == writer_id:
            return writer_cls()
    return None


def register_writer(writer_cls: Type[Writer]) -> None:
    """
    Register a custom writer

    Args:
        writer_cls: Writer class to register
    """
    if writer_cls not in _WRITERS:
        _WRITERS.append(writer_cls)
