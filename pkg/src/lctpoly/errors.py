"""Exception hierarchy. Every error raised on purpose derives from ``LctError``."""


class LctError(Exception):
    """Base class for library errors."""


class ValidationError(LctError, ValueError):
    """Input data violates a documented precondition."""


class MalformedCartanData(ValidationError):
    pass


class RankOverflow(LctError):
    pass


class GroupTooLarge(LctError):
    pass


class NotSemisimple(ValidationError):
    pass


class DimensionMismatch(ValidationError):
    pass


class DegeneratePolytope(ValidationError):
    pass


class UnboundedPolyhedron(ValidationError):
    pass


class EmptyQ(ValidationError):
    pass


class EmptyErosion(LctError):
    pass


class NewtonBodyOutOfRange(ValidationError):
    pass


class NotWInvariant(ValidationError):
    pass


class NotFano(ValidationError):
    pass


class SymmetryViolation(ValidationError):
    pass


class OutsideChamber(ValidationError):
    pass


class InconclusiveNumerics(LctError):
    pass
