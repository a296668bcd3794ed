"""Exception hierarchy.

``NegativeResult`` subclasses are proven mathematical outcomes (no square
root, operand not signed, ...); everything else signals bad input.
"""


class CKError(Exception):
    pass


class SpaceMismatch(CKError, ValueError):
    pass


class PreconditionError(CKError, ValueError):
    pass


class NegativeResult(CKError):
    """A well-posed question whose answer is "no"."""

    def __init__(self, message: str, point=None, **details):
        super().__init__(message)
        self.point = point
        self.details = details


class NotSigned(NegativeResult):
    pass


class NoSquareRoot(NegativeResult):
    pass


class EmptyInterval(NegativeResult):
    pass


class NotInProduct(NegativeResult):
    pass
