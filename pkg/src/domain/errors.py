"""
Error handling and exceptions for the wave-manifold toolkit
"""

from enum import Enum
from typing import Any, Dict, Optional, Sequence


class ErrorCode(Enum):
    """Error codes for the wave-manifold toolkit"""

    UNKNOWN_ERROR = "UNKNOWN_ERROR"

    # Input and configuration errors
    INVALID_PARAMETERS = "INVALID_PARAMETERS"
    INVALID_INPUT = "INVALID_INPUT"
    CONFIG_LOAD_FAILED = "CONFIG_LOAD_FAILED"
    CONFIG_INVALID = "CONFIG_INVALID"

    # Geometry errors
    NOT_ON_MANIFOLD = "NOT_ON_MANIFOLD"
    DEGENERATE_CURVE = "DEGENERATE_CURVE"
    Z_AXIS_DEGENERATE = "Z_AXIS_DEGENERATE"
    NO_REAL_ROOTS = "NO_REAL_ROOTS"
    DEGENERATE_DENOMINATOR = "DEGENERATE_DENOMINATOR"

    # Admissibility assumption violations
    MISSING_SIDE_POINT = "MISSING_SIDE_POINT"
    SECONDARY_BIFURCATION = "SECONDARY_BIFURCATION"
    UNSUPPORTED_CURVE = "UNSUPPORTED_CURVE"

    # Verification and output
    VERIFICATION_FAILED = "VERIFICATION_FAILED"
    EXPORT_FAILED = "EXPORT_FAILED"


class ErrorSeverity(Enum):
    """Error severity levels"""

    LOW = "low"
    MEDIUM = "medium"
    HIGH = "high"
    CRITICAL = "critical"


class ExitCode:
    """Process exit statuses used by the command line"""

    SUCCESS = 0
    USAGE = 2
    DEGENERATE_INPUT = 3
    VERIFICATION_FAILURE = 4
    IO_ERROR = 5


class WaveManifoldError(Exception):
    """Base exception for wave-manifold errors"""

    exit_code: int = ExitCode.USAGE

    def __init__(
        self,
        code: ErrorCode,
        message: str,
        severity: ErrorSeverity = ErrorSeverity.MEDIUM,
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None,
    ):
        self.code = code
        self.message = message
        self.severity = severity
        self.details = details or {}
        self.cause = cause

        super().__init__(f"{code.value}: {message}")

    def to_dict(self) -> Dict[str, Any]:
        """Convert error to dictionary"""
        return {
            "code": self.code.value,
            "message": self.message,
            "severity": self.severity.value,
            "details": self.details,
        }


class ValidationError(WaveManifoldError):
    """Invalid parameters or malformed input"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(ErrorCode.INVALID_INPUT, message, details=details)


class ConfigurationError(WaveManifoldError):
    """Configuration file could not be read or validated"""

    def __init__(
        self,
        message: str,
        details: Optional[Dict[str, Any]] = None,
        cause: Optional[Exception] = None,
    ):
        super().__init__(
            ErrorCode.CONFIG_INVALID, message, details=details, cause=cause
        )


class DegenerateInputError(WaveManifoldError):
    """Input violates a geometric assumption of the decomposition"""

    exit_code = ExitCode.DEGENERATE_INPUT


class NotOnManifold(DegenerateInputError):
    """Blow-up point does not satisfy the manifold equation"""

    def __init__(self, residual: float, tolerance: float):
        super().__init__(
            ErrorCode.NOT_ON_MANIFOLD,
            f"manifold residual {residual!r} exceeds tolerance {tolerance!r}",
            details={"residual": residual, "tolerance": tolerance},
        )


class DegenerateCurve(DegenerateInputError):
    """Intersection polynomial vanishes identically along the curve"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(ErrorCode.DEGENERATE_CURVE, message, details=details)


class ZAxisDegenerate(DegenerateInputError):
    """Son' is the line Y = -2c at z = 0, so t is not determined there"""

    def __init__(self, z0: float):
        super().__init__(
            ErrorCode.Z_AXIS_DEGENERATE,
            "z0 = 0 does not determine a unique point of Son'",
            details={"z0": z0},
        )


class NoRealRoots(DegenerateInputError):
    """Quadratic has no pair of distinct real roots"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(ErrorCode.NO_REAL_ROOTS, message, details=details)


class DegenerateDenominator(DegenerateInputError):
    """Linear-fractional bound has a vanishing denominator at a root"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(
            ErrorCode.DEGENERATE_DENOMINATOR, message, details=details
        )


class MissingSidePoint(DegenerateInputError):
    """The curve through a point does not cross the characteristic surface twice"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(ErrorCode.MISSING_SIDE_POINT, message, details=details)


class SecondaryBifurcation(DegenerateInputError):
    """The curve passes through the secondary bifurcation (l = -2c)"""

    def __init__(self, l: float, c: float):
        super().__init__(
            ErrorCode.SECONDARY_BIFURCATION,
            f"curve with l={l!r} meets the secondary bifurcation l=-2c={-2 * c!r}",
            details={"l": l, "c": c},
        )


class UnsupportedCurve(DegenerateInputError):
    """Operation is only defined for plain Hugoniot curves"""

    def __init__(self, message: str):
        super().__init__(ErrorCode.UNSUPPORTED_CURVE, message)


class VerificationFailed(WaveManifoldError):
    """One or more oracle checks failed, or a closed form has no check.

    output carries the rendered verification report so that the command
    line can still print it before exiting.
    """

    exit_code = ExitCode.VERIFICATION_FAILURE

    def __init__(
        self,
        failed_checks: Sequence[str],
        coverage_gaps: Sequence[str] = (),
        output: Any = None,
    ):
        parts = []
        if failed_checks:
            parts.append(f"{len(failed_checks)} check(s) failed: {', '.join(failed_checks)}")
        if coverage_gaps:
            parts.append(f"closed forms without a check: {', '.join(coverage_gaps)}")
        super().__init__(
            ErrorCode.VERIFICATION_FAILED,
            "; ".join(parts) or "verification failed",
            severity=ErrorSeverity.HIGH,
            details={"failed": list(failed_checks), "coverage_gaps": list(coverage_gaps)},
        )
        self.output = output


class ExportError(WaveManifoldError):
    """Output file could not be written"""

    exit_code = ExitCode.IO_ERROR

    def __init__(self, path: str, cause: Optional[Exception] = None):
        super().__init__(
            ErrorCode.EXPORT_FAILED,
            f"cannot write {path}: {cause}",
            details={"path": path},
            cause=cause,
        )


def exit_code_for(error: BaseException) -> int:
    """Map an exception to the process exit status"""
    if isinstance(error, WaveManifoldError):
        return error.exit_code
    if isinstance(error, OSError):
        return ExitCode.IO_ERROR
    return ExitCode.USAGE
