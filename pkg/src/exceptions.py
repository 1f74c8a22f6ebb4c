"""
Exception hierarchy for the median toolkit
"""

from typing import Any, Tuple


class MedianError(ValueError):
    """Base class for every error raised by the toolkit."""


class MalformedInputError(MedianError):
    """Structurally invalid input (shapes, partitions, weights, graphs)."""


class NotConvexError(MedianError):
    """A convex subset was required."""


class InconsistentSelectionError(MedianError):
    """A partial filter was required."""


class GuardExceededError(MedianError):
    """A configured size guard was exceeded."""

    def __init__(self, what: str, size: int, guard: int):
        self.what = what
        self.size = size
        self.guard = guard
        super().__init__(f"{what}: {size} exceeds guard {guard}")


class InvariantError(MedianError):
    """An asserted postcondition failed; `witness` pins down where."""

    def __init__(self, statement: str, witness: Tuple[Any, ...] = ()):
        self.statement = statement
        self.witness = tuple(witness)
        super().__init__(f"{statement} failed at {self.witness}")


class DocumentError(MedianError):
    """A document could not be parsed or does not match the schema."""

    def __init__(self, message: str, path: str = ""):
        self.path = path
        super().__init__(f"{path}: {message}" if path else message)
