"""Exception hierarchy shared across modules."""


class DistChromError(Exception):
    pass


class InvalidParameterError(DistChromError, ValueError):
    pass


class BoundInapplicableError(DistChromError):
    """The requested bound's hypotheses do not hold for this input."""


class NotRegularError(BoundInapplicableError):
    pass


class NumericFailureError(DistChromError, ArithmeticError):
    pass


class SolverError(NumericFailureError):
    pass


class DegenerateCaseError(BoundInapplicableError):
    pass


class BudgetExceeded(DistChromError):
    """A computation hit its wall-clock budget."""


class OracleTimeout(BudgetExceeded):
    """Exact search ran out of budget; ``lower``/``upper`` bracket the answer."""

    def __init__(self, message, lower, upper, witness=None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness
