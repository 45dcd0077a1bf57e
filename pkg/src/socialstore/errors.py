"""Exception hierarchy shared by the library and the command line."""


class SocialStoreError(Exception):
    """Base class for every error raised by this package."""


class InputError(SocialStoreError, ValueError):
    """Malformed or out-of-range input (bad index, bad parameter, bad matrix)."""


class PreconditionError(SocialStoreError, ValueError):
    """An operation was called in a state it does not accept."""


class RegimeError(SocialStoreError, ValueError):
    """A bound or predicate is meaningless for the supplied parameters."""


class CapacityError(SocialStoreError, ValueError):
    """Exhaustive enumeration requested beyond the supported size."""


class ConfigError(InputError):
    """Invalid run configuration; ``field`` names the offending entry."""

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
