class CompnetError(Exception):
    """Base class for every error raised by compnet."""


class DimensionError(CompnetError, ValueError):
    """Lengths or shapes of vectors and matrices do not fit together."""


class TableLengthError(DimensionError):
    """A table component is evaluated against a dataset with a different number of records."""


class AssumptionViolation(CompnetError):
    """
    The outputs of the components are linearly dependent, so the Gram matrix is singular. The index of the first
    output that depends on the ones before it is available as component_index.
    """

    def __init__(self, message: str, component_index: int = None):
        super().__init__(message)
        self.component_index = component_index


class NoImprovementError(CompnetError):
    """The linear stack does not beat the best single component, so there is no positive epsilon budget."""


class InvalidProfileError(CompnetError, ValueError):
    """The activation profile cannot be used for the scaled construction."""


class ScaledPlanError(CompnetError):
    """The constants of a scaled plan do not deliver what the construction promises."""


class GraphError(CompnetError):
    """The composite graph contains a cycle or refers to a node that does not exist."""


class DivergenceError(CompnetError):
    """Training produced a loss that is not finite."""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch


class ConfigError(CompnetError):
    """Configuration is missing or invalid."""
