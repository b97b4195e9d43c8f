"""Exception types shared by the qpbose modules."""


class QPBoseError(Exception):
    """Base class. ``details`` holds the offending inputs for error records."""

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details


class DomainError(QPBoseError, ValueError):
    """Inputs outside the admissible (q, p) domains or physical ranges."""


class ConvergenceError(QPBoseError, ArithmeticError):
    """A trace, series or quadrature that does not converge (or not within the cap)."""
