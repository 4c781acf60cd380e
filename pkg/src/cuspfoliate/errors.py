"""Exception hierarchy shared by all modules."""


class CuspfoliateError(Exception):
    """Base class for every error raised by the package."""


class DomainError(CuspfoliateError, ValueError):
    """Operands live over different variable lists or coefficient domains."""


class NotDivisible(CuspfoliateError, ArithmeticError):
    """An exact division left a nonzero remainder.

    This is a signal rather than a fault: divisibility tests catch it and
    turn it into a boolean.
    """


class UndefinedOrder(CuspfoliateError, ValueError):
    """Order or valuation requested for the zero polynomial."""


class ReducibleModulus(CuspfoliateError, ArithmeticError):
    """``t^delta - a`` turned out to be reducible over the rationals.

    ``factor`` holds the monic common factor found by the Euclidean
    algorithm, as coefficients from low to high degree.
    """

    def __init__(self, message, factor=()):
        super().__init__(message)
        self.factor = tuple(factor)


class NotLogarithmic(CuspfoliateError, ValueError):
    """The form does not have the hypersurface as a separatrix."""


class SearchBudgetExceeded(CuspfoliateError, RuntimeError):
    """No admissible directional derivative was found within the budget."""

    def __init__(self, message, last_direction):
        super().__init__(message)
        self.last_direction = tuple(last_direction)


class NotFree(CuspfoliateError, ValueError):
    """The proposed forms do not give a free basis of logarithmic forms."""


class OrderViolation(CuspfoliateError, ValueError):
    """The unit test of the cuspidal decomposition failed.

    Raised when ``G_1 / phi_{x_1}`` is not a polynomial unit, which happens
    exactly when the form does not have order ``k - 1`` at the origin in
    the way the decomposition requires.
    """


class DuplicateRoot(CuspfoliateError, ValueError):
    """Two branch coefficients ``a_i`` of a cuspidal family coincide."""


class UnsupportedParity(CuspfoliateError, NotImplementedError):
    """A resolution step was asked to handle an odd blow-up count."""

    def __init__(self, step, message):
        super().__init__(f"{step}: {message}")
        self.step = step


class NegativeExponent(CuspfoliateError, ValueError):
    """A chart exponent (``P`` or ``Q``) is negative for this family."""


class ConsistencyError(CuspfoliateError, AssertionError):
    """A displayed identity failed to hold exactly. Never expected."""
