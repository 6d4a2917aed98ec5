"""Exception types shared across the library."""


class ParameterError(ValueError):
    """An argument is outside its mathematical domain."""


class NumericalFailure(RuntimeError):
    """An iterative numerical routine failed to produce a usable result."""


class EstimationError(RuntimeError):
    """A Monte Carlo estimate cannot be formed from the available samples."""
