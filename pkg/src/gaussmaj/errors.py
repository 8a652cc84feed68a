"""Exception types raised by gaussmaj."""


class GaussMajError(Exception):
    """Base class for all errors raised by this package."""


class InvalidDimensionError(GaussMajError, ValueError):
    """A Fock-space dimension was not a positive integer."""


class ContractViolation(GaussMajError, ValueError):
    """An input broke a documented precondition (Hermiticity, positivity, normalization...)."""


class TruncationError(GaussMajError, RuntimeError):
    """The truncated Fock space is too small for the requested accuracy."""
