"""
Interfaces - pure abstractions shared by the application and infrastructure layers
"""

from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any, Dict, Iterable, Optional, Sequence

from ..common.result_handling import Result


class ILogger(ABC):
    """Logging interface"""

    @abstractmethod
    def debug(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def info(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def warning(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def error(self, message: str, **kwargs) -> None:
        pass

    @abstractmethod
    def critical(self, message: str, **kwargs) -> None:
        pass


class IConfigurationService(ABC):
    """Loads the toolkit configuration"""

    @abstractmethod
    def load(self, path: Optional[Path] = None) -> Result[Any, Exception]:
        """Load and validate a configuration file, or the defaults"""
        pass


class IResultWriter(ABC):
    """Serializes command output as text"""

    @abstractmethod
    def write_rows(
        self, header: Sequence[str], rows: Iterable[Sequence[Any]]
    ) -> str:
        """Render tabular rows"""
        pass

    @abstractmethod
    def write_document(self, document: Dict[str, Any]) -> str:
        """Render a structured document"""
        pass
