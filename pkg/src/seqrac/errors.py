"""Exception types raised across the package."""


class RacError(ValueError):
    """Base class for every error raised by seqrac."""


class NonHermitian(RacError):
    pass


class Unphysical(RacError):
    pass


class NotBellDiagonal(RacError):
    pass


class BadInput(RacError):
    pass


class DegenerateState(RacError):
    """Encoding directions are undefined because the relevant correlations vanish.

    ``pair_index`` is filled in by the sequence runner so callers can tell
    which pair in a schedule failed.
    """

    def __init__(self, message, pair_index=None):
        self.pair_index = pair_index
        if pair_index is not None:
            message = f"pair {pair_index}: {message}"
        super().__init__(message)


class ConfigError(RacError):
    pass


class UnknownParameter(ConfigError):
    pass


class GoldenMismatch(RacError):
    pass


class UnderflowWarning(RuntimeWarning):
    """A correlation coefficient fell below the representable floor."""
