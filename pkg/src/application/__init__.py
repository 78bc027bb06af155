"""
Application Layer - commands, verification suite and the command line
"""

from .checks import CheckContext, OracleRegistry
from .commands import (
    ArcsCommand,
    BaseCommand,
    ClassifyCommand,
    CommandOutput,
    CurveCommand,
    ICommand,
    MeshCommand,
    VerifyCommand,
)
from .oracle import OracleReport

__all__ = [
    "CheckContext",
    "OracleRegistry",
    "OracleReport",
    "ArcsCommand",
    "BaseCommand",
    "ClassifyCommand",
    "CommandOutput",
    "CurveCommand",
    "ICommand",
    "MeshCommand",
    "VerifyCommand",
]
