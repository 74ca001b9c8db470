"""Shared exception types."""


class TdhomError(Exception):
    pass


class ShapeError(TdhomError):
    """Dimension or arity mismatch between structures."""


class InvalidPermutation(TdhomError):
    """Image array is not a bijection of 0..n-1."""


class MalformedInput(TdhomError):
    """Structure constants reference indices out of range."""


class AxiomError(TdhomError):
    """An eager axiom check failed on load.

    Carries the failed CheckResult in .result when available.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


class ParseError(TdhomError):
    """Structure file does not conform to the tdhom/1 format."""


class GuardError(TdhomError):
    """Refused: requested computation exceeds a size guard.

    The message names the override (argument or TDHOM_GUARD_LIMIT).
    """
