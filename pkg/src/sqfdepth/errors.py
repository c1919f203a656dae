"""Exception types raised by the engine.

The CLI maps each class to its own exit code, so callers can tell bad input
from an instance that is simply too large or mathematically degenerate.
"""

from __future__ import annotations


class SqfDepthError(Exception):
    """Base class for all engine errors."""


class InvalidInputError(SqfDepthError, ValueError):
    """Arguments violate an operation's preconditions."""


class DegenerateError(SqfDepthError, ValueError):
    """The module is zero (unit ideal quotient, zero ideal, J == I)."""


class CapExceededError(SqfDepthError, RuntimeError):
    """An exact computation would exceed a configured size cap."""
