"""Exception hierarchy.

Validation errors (bad input documents, violated invariants of a value)
map to CLI exit code 1; computation errors to exit code 2.
"""


class IHMotiveError(Exception):
    """Base class. ``field`` names the offending input, ``invariant`` the broken rule."""

    def __init__(self, message, field=None, invariant=None):
        super().__init__(message)
        self.field = field
        self.invariant = invariant

    def __str__(self):
        msg = super().__str__()
        extra = []
        if self.field is not None:
            extra.append(f"field={self.field}")
        if self.invariant is not None:
            extra.append(f"invariant={self.invariant}")
        if extra:
            return f"{msg} [{', '.join(extra)}]"
        return msg


class ValidationError(IHMotiveError, ValueError):
    pass


class ParseError(ValidationError):
    pass


class NotSymmetric(ValidationError):
    pass


class ShapeMismatch(ValidationError):
    pass


class NotSquarefree(ValidationError):
    pass


class UnknownComponentId(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class ComputationError(IHMotiveError, ArithmeticError):
    pass


class SingularMatrix(ComputationError):
    pass


class DegenerateGram(ComputationError):
    pass


class ZeroBase(ComputationError):
    pass


class SupportAtNode(ComputationError):
    pass


class BrokenWalk(ComputationError):
    pass


class NotIrrational(ComputationError):
    pass


class HypothesisViolated(ComputationError):
    pass


class PreconditionFailed(ComputationError):
    pass
