"""Exception types shared across the package."""


class ContextMismatch(ValueError):
    """Two operands live over different variable sets."""


class NotDivisible(ArithmeticError):
    """Exact division has no Laurent polynomial quotient.

    This is an ordinary outcome of :func:`hallshuffle.arith.exact_div`, not a
    sign that something went wrong.
    """


class PoleError(ZeroDivisionError):
    """A substitution or evaluation hit a vanishing denominator factor."""


class CoprimalityError(ValueError):
    """A slope (m, n) was required to satisfy gcd(m, n) = 1."""

    def __init__(self, m, n):
        super().__init__(
            f"gcd({m}, {n}) != 1: this generator is only defined for coprime "
            f"(m, n) in Z x N"
        )
        self.m = m
        self.n = n


class SizeBoundExceeded(ValueError):
    """A desk-scale brute force routine was asked for more than it will do."""


class InvariantViolation(AssertionError):
    """A postcondition that the mathematics guarantees did not hold."""


class NotInSpan(ValueError):
    """A target could not be written in the requested PBW window."""


class ParseError(ValueError):
    """Malformed input text; ``pos`` is the 0-based character offset."""

    def __init__(self, message, pos=None):
        if pos is not None:
            message = f"{message} at position {pos}"
        super().__init__(message)
        self.pos = pos
