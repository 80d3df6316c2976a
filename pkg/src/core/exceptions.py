"""Exception hierarchy for engelset.

The CLI maps these to exit codes: ParameterError -> 2,
InsufficientWindowError / ResourceCapError -> 3.
"""


class EngelSetError(Exception):
    """Base class for all engelset errors."""


class ParameterError(EngelSetError, ValueError):
    """Invalid parameters, sequences, vectors or matrices."""


class InsufficientWindowError(EngelSetError):
    """A ball may clip the generated window, or a certificate cannot be made."""


class ResourceCapError(EngelSetError):
    """A window would hold more points than the configured cap."""

    def __init__(self, requested: int, cap: int) -> None:
        self.requested = requested
        self.cap = cap
        super().__init__(
            f"Window would contain {requested} points, above the cap of {cap}. "
            "Raise ENGELSET_MAX_POINTS or pass --max-points."
        )
