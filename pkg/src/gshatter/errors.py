"""Exceptions shared across the package.

Each error maps to a stable command-line exit code (see ``gshatter.cli``),
so callers can distinguish "your input was malformed" from "the group is
too small" from "an internal synthesis check failed".
"""

from __future__ import annotations


class GShatterError(Exception):
    """Base class for all package-specific errors."""


class GroupSpecError(GShatterError):
    """A group specification string could not be parsed or validated."""


class GroupTooSmallError(GShatterError):
    """The group has fewer elements than kernel synthesis requires."""

    def __init__(self, order: int, required: int, mode: str):
        self.order = order
        self.required = required
        self.mode = mode
        super().__init__(
            f"group of order {order} is too small for mode '{mode}': "
            f"need at least {required} elements"
        )


class MissingElementError(GShatterError):
    """The group has no element of the kind the requested mode needs."""


class SynthesisVerificationError(GShatterError):
    """An internal consistency check failed after kernel synthesis.

    This is never silenced: a kernel is only returned once every claimed
    property has been re-checked against the definitions.
    """
