"""
Logging service implementation
"""

import sys
from pathlib import Path
from typing import Any

from loguru import logger as _root_logger

from ..domain.configuration import LoggingConfig
from ..interfaces import ILogger

LOG_FORMAT = (
    "{time:YYYY-MM-DD HH:mm:ss.SSS} | {level: <8} | {extra[component]} | {message}"
)


def configure_logging(config: LoggingConfig) -> None:
    """Install the stderr sink and the optional rotating file sink.

    Stdout is reserved for command output, so console logs go to stderr.
    Calling this again replaces the previous sinks.
    """
    _root_logger.remove()
    _root_logger.configure(extra={"component": "wave-manifold"})
    _root_logger.add(
        sys.stderr,
        level=config.level,
        format=LOG_FORMAT,
        serialize=config.serialize,
        backtrace=False,
        diagnose=False,
    )

    if config.file_path:
        try:
            Path(config.file_path).parent.mkdir(parents=True, exist_ok=True)
            _root_logger.add(
                config.file_path,
                level=config.level,
                format=LOG_FORMAT,
                rotation=config.rotation,
                retention=config.retention,
                serialize=config.serialize,
            )
        except OSError as e:
            _root_logger.warning(f"Could not setup file logging: {e}")


class LoggingService(ILogger):
    """ILogger backed by a loguru logger bound to one component"""

    def __init__(self, component: str = "wave-manifold", **context: Any):
        self.component = component
        self.logger = _root_logger.bind(component=component, **context)

    def debug(self, message: str, **kwargs) -> None:
        self.logger.opt(depth=1).debug(message, **kwargs)

    def info(self, message: str, **kwargs) -> None:
        self.logger.opt(depth=1).info(message, **kwargs)

    def warning(self, message: str, **kwargs) -> None:
        self.logger.opt(depth=1).warning(message, **kwargs)

    def error(self, message: str, **kwargs) -> None:
        self.logger.opt(depth=1).error(message, **kwargs)

    def critical(self, message: str, **kwargs) -> None:
        self.logger.opt(depth=1).critical(message, **kwargs)
