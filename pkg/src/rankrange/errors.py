"""Exception types raised when a matrix fails a mathematical precondition."""


class HypothesisError(ValueError):
    """Input is well-formed but violates a mathematical precondition."""


class NotHermitianError(HypothesisError):
    pass


class NotPSDError(HypothesisError):
    pass


class NotNilpotentError(HypothesisError):
    pass


class NotContractionError(HypothesisError):
    pass


class ConvergenceError(RuntimeError):
    """The Jacobi sweep did not reach its off-diagonal threshold."""
