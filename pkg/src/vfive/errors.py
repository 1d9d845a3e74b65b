"""Exception hierarchy shared by the vfive modules."""


class VFiveError(Exception):
    """Base class for all library errors."""


class UnknownToken(VFiveError, ValueError):
    """A circuit string contained a lexeme outside the gate alphabet."""

    def __init__(self, position, lexeme):
        self.position = position
        self.lexeme = lexeme
        super().__init__(f"unknown gate token {lexeme!r} at position {position}")


class NotDivisible(VFiveError, ArithmeticError):
    """Right division of Lipschitz quaternions left a non-integral quotient."""


class NotRepresentable(VFiveError, ValueError):
    """The value has no representation of the requested form."""


class NotAGenerator(VFiveError, ValueError):
    pass


class FactorizationTimeout(VFiveError):
    pass


class BudgetExceeded(VFiveError):
    """A configured enumeration or memory budget would be exceeded."""


class CapExceeded(BudgetExceeded):
    pass


class TableCapExceeded(BudgetExceeded):
    pass


class EpsilonTooLarge(VFiveError, ValueError):
    pass


class SearchFailure(VFiveError):
    """Base for approximation searches that ran out of candidates."""


class WindowExhausted(SearchFailure):
    pass


class SearchExhausted(SearchFailure):
    pass


class EmptySample(VFiveError, ValueError):
    pass
