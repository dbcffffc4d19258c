"""Exception types raised across the package."""


class SubshiftError(Exception):
    pass


class DomainError(SubshiftError, ValueError):
    """An index or vector lies outside the operator's sequence space."""


class AdmissibilityError(SubshiftError, ValueError):
    """A power does not leave the subspace invariant, or an index is not in it."""


class DegenerateSubspaceError(SubshiftError, ValueError):
    """The index set spans the zero or a finite-dimensional subspace."""


class ConditionRefused(SubshiftError):
    """A construction needs a limit condition that did not hold at the horizon."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


class HorizonError(SubshiftError):
    """The power schedule ran out before a construction could finish."""


class ConstructionError(SubshiftError):
    def __init__(self, message, diagnostics=None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class ConfigError(SubshiftError, ValueError):
    pass


class KindError(SubshiftError, ValueError):
    """The operator kind does not fit the requested evaluator."""
