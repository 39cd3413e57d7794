"""Exception hierarchy shared by the library and the CLI."""


class FDStatesError(Exception):
    """Base class for all package errors."""


class ConfigError(FDStatesError, ValueError):
    """Invalid user input: out-of-range indices, bad ranges, malformed parameters."""


class DegenerateStateError(FDStatesError):
    """The requested state (or quantity) is undefined, e.g. an odd cat at alpha = 0."""


class RootConvergenceError(FDStatesError):
    """Newton refinement of polynomial roots did not converge."""


class MatrixNormError(FDStatesError):
    """Matrix exponential argument norm exceeds the configured bound."""


class NoReturnError(FDStatesError):
    """No local maximum of the seed-return observable in the scanned range."""


class RegimeError(FDStatesError):
    """Series fit is outside its small-parameter regime."""


class ConsistencyError(FDStatesError):
    """Two independent evaluations of the same quantity disagree."""


class ToleranceError(FDStatesError):
    """A numerical cross-check exceeded its tolerance."""
