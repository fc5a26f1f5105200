"""
Base class for output writers
"""
from abc import ABC, abstractmethod
from typing import Any, Dict, TextIO


class Writer(ABC):
    """
    Base class for all output writers
    """

    # Class attributes to be overridden by subclasses
    id: str = "base-writer"
    name: str = "Base Writer"
    description: str = "Base class for all writers"
    extension: str = ""

    def __init__(self, config: Dict[str, Any] = None):
        """
        Initialize a writer

        Args:
            config: Configuration options for this writer
        """
        self.config = config or {}

    def __str__(self) -> str:
        """String representation"""
        return f"{self.id} ({self.name})"

    def get_option(self, name: str, default: Any = None) -> Any:
        """
        Get the value of an option

        Args:
            name: Name of the option
            default: Default value if not specified

        Returns:
            Value of the option, or default if not set
        """
        return self.config.get(name, default)

    @abstractmethod
    def accepts(self, payload: Any) -> bool:
        """
        Check if this writer can serialise a payload

        Args:
            payload: Data to write

        Returns:
            True if the payload is supported
        """
        pass

    @abstractmethod
    def write(self, payload: Any, stream: TextIO) -> None:
        """
        Serialise a payload to a text stream

        Args:
            payload: Data to write
            stream: Destination
        """
        pass
