"""Exception hierarchy.

Every error raised on bad input derives from :class:`PreconditionError`
(CLI exit code 2). :class:`InconsistencyError` signals a bug or a failed
premise (exit code 4).
"""


class MeynielError(Exception):
    """Base class for all library errors."""


class PreconditionError(MeynielError, ValueError):
    """Input violates an operation's precondition."""


class InvalidOrderError(PreconditionError):
    pass


class DomainError(PreconditionError):
    pass


class OverflowOrderError(InvalidOrderError):
    pass


class CharacteristicError(PreconditionError):
    pass


class ParityError(PreconditionError):
    pass


class IdentityInSetError(PreconditionError):
    pass


class AsymmetryError(PreconditionError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"generator set is not symmetric: inverse of {element} is missing")


class SizeError(PreconditionError):
    pass


class NoValidPrimeError(PreconditionError):
    pass


class SmallOrderError(PreconditionError):
    pass


class UnprovenPremiseError(PreconditionError):
    pass


class AlreadyCapturedError(PreconditionError):
    pass


class DependencyError(PreconditionError):
    pass


class StrategyFault(MeynielError):
    def __init__(self, offender: str, detail: str):
        self.offender = offender
        super().__init__(f"illegal move from {offender}: {detail}")


class InconsistencyError(MeynielError):
    pass
