"""Exception hierarchy shared by all subsystems."""


class StarTransError(Exception):
    """Base class for all errors raised by this package."""


class IncompatibleField(StarTransError):
    """Operands live over different coefficient fields or variable sets."""


class DimensionMismatch(StarTransError):
    """Matrix or vector dimensions do not line up."""


class NotInModule(StarTransError):
    """Membership test failed: the element is not in the submodule."""


class NotASop(StarTransError):
    """The given elements do not generate a finite-colength ideal.

    Carries the offending Hilbert series in ``series`` when available.
    """

    def __init__(self, message, series=None):
        super().__init__(message)
        self.series = series


class PreconditionFailed(StarTransError):
    """A documented precondition of an operation was violated."""


class LiftError(StarTransError):
    """A lift that is guaranteed by exactness could not be found.

    Raised only on internally inconsistent inputs (e.g. a complex that was
    claimed acyclic but is not).
    """


class BasisSelectionError(StarTransError):
    """The greedily selected generating set failed to be a free basis."""


class TopMapMismatch(StarTransError):
    """The closed-form evaluation of the top map disagrees with the
    restriction of the split map; indicates an internal inconsistency."""


class NonPolynomialDifference(StarTransError):
    """A Hilbert series difference that must be a polynomial is not one."""


class IterationLimit(StarTransError):
    """Saturation did not stabilize within the allowed number of rounds."""


class ParseError(StarTransError):
    """Malformed textual input (polynomial syntax or problem file)."""


class ValidationError(StarTransError):
    """Well-formed input that violates a structural invariant."""
