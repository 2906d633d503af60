"""Exception types shared across the package.

Each maps to a distinct nonzero exit code in the command line tool, see
:mod:`aent.cli`.
"""

from __future__ import annotations


class AentError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgumentError(AentError, ValueError):
    """An argument violates a documented precondition."""


class ShapeMismatchError(InvalidArgumentError):
    """Array arguments have incompatible shapes."""


class DegenerateInputError(AentError, ValueError):
    """Input is structurally valid but carries no usable signal (e.g. all zero)."""


class FormatError(AentError, ValueError):
    """A serialized matrix file is malformed."""
