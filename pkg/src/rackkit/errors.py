"""Exception types shared across the package."""


class RackkitError(Exception):
    pass


class TruncationOverflow(RackkitError):
    """A product would exceed the truncation degree of a filtered carrier."""


class ResourceLimitError(RackkitError):
    """An ambient dimension exceeds the configured budget (RACKKIT_MAX_DIM)."""


class StructureError(RackkitError, ValueError):
    """Ill-formed structure constants or violated construction precondition."""
