"""Exception hierarchy shared across the package.

Everything user-facing derives from :class:`PhprocError` so the CLI can map
library failures to a single exit code.
"""


class PhprocError(Exception):
    """Base class for all errors raised by this package."""


class ParameterError(PhprocError, ValueError):
    """A distribution or process parameter is outside its domain."""


class DomainError(PhprocError, ValueError):
    """An input value lies outside the domain of the requested operation."""


class UsageError(PhprocError, TypeError):
    """An operation was called with inconsistent arguments."""


class DegenerateStatisticsError(PhprocError, ValueError):
    """Summary statistics sit on a boundary where the moment equations blow up."""


class InfeasibleStatisticsError(PhprocError, ValueError):
    """Summary statistics are incompatible with the model (e.g. mean <= minimum)."""


class DataError(PhprocError, ValueError):
    """Input data could not be loaded or is unusable."""
