"""
Infrastructure Layer - logging, configuration files and output writers
"""

from .configuration_service import LocalConfigurationService as ConfigurationService
from .configuration_service import load_config
from .export import CsvWriter, JsonWriter, writer_for
from .logging import LoggingService, configure_logging

__all__ = [
    "ConfigurationService",
    "load_config",
    "CsvWriter",
    "JsonWriter",
    "writer_for",
    "LoggingService",
    "configure_logging",
]
