"""Exception types shared across the package."""


class EquivectError(Exception):
    """Base class for domain errors (CLI exit code 1)."""


class IllegalFamilyParameter(EquivectError):
    pass


class NotASubgroup(EquivectError):
    pass


class UnknownPointLabel(EquivectError):
    pass


class PreconditionViolation(EquivectError):
    pass


class NotNormal(EquivectError):
    pass


class QuotientNotCyclic(EquivectError):
    pass


class NotFixedByG(EquivectError):
    pass


class WrongStabilizerGroup(EquivectError):
    pass


class NotFaithfulOrder(EquivectError):
    pass


class ConditionViolation(EquivectError):
    pass


class InvalidInvariant(EquivectError):
    pass


class NotApplicable(EquivectError):
    pass


class UnsupportedFamily(EquivectError):
    pass


class E1Violation(EquivectError):
    pass


class DiscontinuousClutching(EquivectError):
    pass


class InvariantMismatch(EquivectError):
    pass


class CapExceeded(EquivectError):
    pass


class ParseError(EquivectError):
    pass


class AmbientMismatch(EquivectError):
    pass


class UnsupportedGroupType(EquivectError):
    pass


class WindowTooSmall(EquivectError):
    pass


class NotLineInvariant(EquivectError):
    pass


class NoLineDecomposition(EquivectError):
    pass


class WindingResidualTooLarge(EquivectError):
    pass
