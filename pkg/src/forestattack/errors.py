"""Exception types shared across the package."""


class ForestAttackError(Exception):
    """Base class for all package errors."""


class GraphParseError(ForestAttackError):
    """Malformed edge-list input. Carries the 1-based line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ValidationError(ForestAttackError):
    """Input violates a graph invariant (self-loop, duplicate edge, bad weight)."""


class CapacityError(ForestAttackError):
    """Problem size exceeds a configured dense/budget limit."""


class BudgetExceededError(CapacityError):
    """Brute-force subset count exceeds the enumeration budget."""

    def __init__(self, required, budget):
        self.required = required
        self.budget = budget
        super().__init__(
            f"brute force would enumerate {required} subsets (budget {budget})"
        )


class DegeneracyError(ForestAttackError):
    """A rank-1 update or estimated-gain denominator fell below its guard.

    The exact denominator is provably positive, so this signals accumulated
    floating-point drift (exact path) or sketch noise (approximate path).
    """

    def __init__(self, message, denominator=None):
        self.denominator = denominator
        super().__init__(message)


class SolverConvergenceError(ForestAttackError):
    """Iterative solver failed to meet its residual contract."""

    def __init__(self, residual, iterations):
        self.residual = residual
        self.iterations = iterations
        super().__init__(
            f"no convergence after {iterations} iterations "
            f"(relative residual {residual:.3e})"
        )
