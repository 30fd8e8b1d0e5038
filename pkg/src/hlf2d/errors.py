"""Exception types shared across the package."""


class HlfError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(HlfError):
    """Malformed input: bad dimensions, asymmetry, unparseable documents."""


class ResourceCapError(HlfError):
    """A configured resource cap (rank, qubit count, image size) was exceeded."""


class InvariantError(HlfError):
    """A theorem-level invariant failed; indicates a bug or corrupted input."""
