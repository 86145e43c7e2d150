"""Exception types shared across the package.

Every error raised on bad inputs or failed computations derives from CslError
so callers (CLI, service) can map them to exit codes / HTTP statuses in one
place.
"""


class CslError(Exception):
    """Base class for all csl errors."""


class InsufficientDataError(CslError):
    """Input series is shorter than the documented floor for the operation."""


class DomainError(CslError):
    """Parameter outside the mathematical domain of the operation."""


class AlignmentError(CslError):
    """Two series share no common dates."""


class DataFormatError(CslError):
    """Malformed input file (CSV / edge list / scenario payload)."""


class ConfigError(CslError):
    """Invalid configuration (scenario section, chart spec, test battery)."""


class CapacityError(CslError):
    """Problem size exceeds the documented exhaustive-search bound."""


class DegenerateGraphError(CslError):
    """Graph too small or too constrained for the requested randomization."""


class EstimationError(CslError):
    """Optimizer failed to converge; carries the best point found so far."""

    def __init__(self, message: str, best=None):
        super().__init__(message)
        self.best = best
