"""Exception hierarchy shared by all blochlab modules."""


class BlochlabError(Exception):
    """Base class for all blochlab errors."""


class InvalidInputError(BlochlabError):
    """Malformed or non-finite input data."""


class SymmetryError(InvalidInputError):
    """A potential violates the symmetry class required by the operation."""


class ResourceLimitError(BlochlabError):
    """Requested problem size exceeds the dense-matrix memory policy."""


class ConvergenceError(BlochlabError):
    """An iterative numerical method failed to converge."""

    def __init__(self, message, iterations=None):
        super().__init__(message)
        self.iterations = iterations


class GapClosedError(BlochlabError):
    """A spectral gap required to be open is closed or negative."""


class TrackingError(BlochlabError):
    """Band tracking could not resolve an assignment between grid points."""

    def __init__(self, message, p_interval=None):
        super().__init__(message)
        self.p_interval = p_interval


class DegeneracyError(BlochlabError):
    """Perturbation theory was requested at a (numerically) degenerate level.

    Degeneracies at p = 1/2 are the business of the complex-arc machinery,
    not of the simple-eigenvalue series.
    """


class ConditionNotMetError(BlochlabError):
    """The odd-coefficient sign condition for complex arcs does not hold."""


class ArcDetectionError(BlochlabError):
    """No conjugate pair was found where one was predicted.

    Signals either a g too small for the grid resolution or failure of the
    arc condition; the caller should inspect the attached diagnostics.
    """


class OracleError(BlochlabError):
    """Internal failure of the exact Kronig-Penney oracle (a bug, not math)."""


class ConfigError(BlochlabError):
    """Config or potential-spec file could not be parsed or validated."""

    def __init__(self, message, line=None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line
