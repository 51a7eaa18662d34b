"""Shared exception types with distinct CLI exit codes."""

from __future__ import annotations


class ParseError(ValueError):
    """Malformed input file or value."""


class PreconditionError(ValueError):
    """A documented precondition of an operation failed."""
