"""Exception types raised across the package."""


class GroupError(Exception):
    """Base class for every error this package raises deliberately."""


class NotAGroup(GroupError):
    """A Cayley table fails a group axiom; carries the axiom and a witness."""

    def __init__(self, reason, witness=None):
        self.reason = reason
        self.witness = witness
        msg = reason if witness is None else f"{reason} (witness {witness})"
        super().__init__(msg)


class OrderCapExceeded(GroupError):
    """A construction would exceed a configured size limit."""


class NotASubgroup(GroupError):
    """An element set is not a subgroup of its parent."""


class NotNormal(GroupError):
    """A subgroup is not closed under conjugation."""


class MismatchedParent(GroupError):
    """Element sets or elements of different parent groups were mixed."""


class CapExceeded(GroupError):
    """An isomorphism search was asked about groups above its size limit."""


class PreconditionViolated(GroupError):
    """A documented precondition of an operation does not hold."""


class InternalInvariantViolation(GroupError):
    """A property guaranteed by construction failed; indicates a bug here."""


class ParseError(GroupError):
    """A group expression is malformed; carries position and expectations."""

    def __init__(self, message, position, expected=()):
        self.position = position
        self.expected = tuple(expected)
        if self.expected:
            message = f"{message} at position {position}, expected {' | '.join(self.expected)}"
        else:
            message = f"{message} at position {position}"
        super().__init__(message)


class InvalidCayleyFile(GroupError):
    """A .cayley file does not follow the documented layout."""
