"""
Exception hierarchy shared by every layer.

Each class carries the process exit code the CLI reports for it, so the
mapping lives in one place.
"""
from __future__ import annotations


class AntirotorError(Exception):
    exit_code = 1
    kind = "error"


class UsageError(AntirotorError):
    """Malformed request: bad flags, unknown names, shape mismatches."""

    exit_code = 2
    kind = "usage"


class DomainError(AntirotorError):
    """Mathematically invalid input (no unit, singular K, pole on path, ...)."""

    exit_code = 1
    kind = "domain"


class VerificationError(AntirotorError):
    """An internal cross-check failed; signals a solver bug, not bad input."""

    exit_code = 3
    kind = "verification"
