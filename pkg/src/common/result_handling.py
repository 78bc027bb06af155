"""
Result type returned by commands.

A command never raises to the CLI: it returns Result.success(output) or a
failure carrying the exception, the operation name and the cause chain, and
the CLI turns the failure into an exit code.
"""

import time
import traceback
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, Generic, List, Optional, TypeVar

T = TypeVar("T")
E = TypeVar("E")
R = TypeVar("R")


class ResultStatus(Enum):
    SUCCESS = "success"
    FAILURE = "failure"


@dataclass
class ErrorContext:
    """Where a failure happened and what caused it"""

    operation: Optional[str] = None
    timestamp: float = field(default_factory=time.time)
    stack_trace: Optional[str] = None
    chained_errors: List[Dict[str, str]] = field(default_factory=list)

    @classmethod
    def capture(cls, operation: Optional[str] = None) -> "ErrorContext":
        """Context with the traceback of the exception being handled, if any"""
        trace = traceback.format_exc()
        return cls(
            operation=operation,
            stack_trace=None if trace.strip() == "NoneType: None" else trace,
        )


def _cause_chain(exc: BaseException) -> List[Dict[str, str]]:
    chain = []
    current: Optional[BaseException] = exc
    while current is not None:
        chain.append({"type": type(current).__name__, "message": str(current)})
        current = current.__cause__ or current.__context__
    return chain


@dataclass
class Result(Generic[T, E]):
    """Either a value or an error with its context"""

    status: ResultStatus
    value: Optional[T] = None
    error: Optional[E] = None
    context: Optional[ErrorContext] = None

    @classmethod
    def success(cls, value: T, context: Optional[ErrorContext] = None) -> "Result[T, E]":
        return cls(ResultStatus.SUCCESS, value=value, context=context)

    @classmethod
    def failure(cls, error: E, context: Optional[ErrorContext] = None) -> "Result[T, E]":
        return cls(ResultStatus.FAILURE, error=error, context=context or ErrorContext.capture())

    @classmethod
    def from_exception(cls, exc: Exception, operation: Optional[str] = None) -> "Result[T, Exception]":
        """Failure holding exc, the operation name and the __cause__/__context__ chain"""
        context = ErrorContext.capture(operation)
        context.chained_errors = _cause_chain(exc)
        return cls(ResultStatus.FAILURE, error=exc, context=context)

    def is_success(self) -> bool:
        return self.status is ResultStatus.SUCCESS

    def is_failure(self) -> bool:
        return self.status is ResultStatus.FAILURE

    def map(self, func: Callable[[T], R]) -> "Result[R, Any]":
        """Apply func to the value; an exception raised by func becomes a failure"""
        if self.is_failure():
            return Result.failure(self.error, self.context)
        try:
            return Result.success(func(self.value), self.context)
        except Exception as e:
            return Result.from_exception(e, operation="map_operation")

    def and_then(self, func: Callable[[T], "Result[R, E]"]) -> "Result[R, E]":
        if self.is_failure():
            return Result.failure(self.error, self.context)
        return func(self.value)

    def unwrap(self) -> T:
        """Value of a success; a failure re-raises its exception"""
        if self.is_success():
            return self.value
        if isinstance(self.error, BaseException):
            raise self.error
        raise RuntimeError(f"Result is failure: {self.error}")

    def log_error(self, logger, prefix: str = "Operation failed") -> None:
        if self.is_success() or logger is None:
            return
        operation = self.context.operation if self.context else None
        logger.error(f"{prefix}: {self.error}" + (f" (operation: {operation})" if operation else ""))
        if self.context and self.context.stack_trace:
            logger.debug(f"Full stack trace: {self.context.stack_trace}")

    def to_dict(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"status": self.status.value, "success": self.is_success()}
        if self.is_success():
            to_dict = getattr(self.value, "to_dict", None)
            data["value"] = to_dict() if callable(to_dict) else self.value
            return data
        data["error"] = str(self.error)
        if self.context and self.context.operation:
            data["context"] = {"operation": self.context.operation}
        return data
