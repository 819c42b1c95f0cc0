"""Exception types shared across the package.

Input problems (bad ids, malformed files, invalid quotas) raise
:class:`InputError` or a subclass; they map to exit code 1 in the CLI.
Resource refusals (grids over the memory budget, enumeration over the
player limit) raise :class:`ResourceLimitError` and map to exit code 2.
"""

from __future__ import annotations


class InputError(ValueError):
    """Invalid user-supplied data: unknown ids, bad weights, bad options."""


class ParseError(InputError):
    """Structurally malformed text input; carries the 1-based line number."""

    def __init__(self, line: int, reason: str, column: int | None = None):
        where = f"line {line}" if column is None else f"line {line}, column {column}"
        super().__init__(f"{where}: {reason}")
        self.line = line
        self.column = column
        self.reason = reason


class ValidationError(InputError):
    """Well-formed input that violates a data invariant."""


class ResourceLimitError(RuntimeError):
    """Computation refused because it would exceed a configured budget."""


class NormalizationError(ArithmeticError):
    """No voter is critical anywhere, so indices cannot be normalised."""
