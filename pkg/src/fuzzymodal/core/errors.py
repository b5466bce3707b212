"""Exception hierarchy shared by all fuzzymodal modules."""


class FuzzyModalError(Exception):
    """Base class for every error raised by this package."""


class UnknownStateError(FuzzyModalError):
    def __init__(self, state):
        super().__init__(f"unknown state {state!r}")
        self.state = state


class UnknownAtomError(FuzzyModalError):
    def __init__(self, atom):
        super().__init__(f"undeclared atom {atom!r}")
        self.atom = atom


class AtomMismatchError(FuzzyModalError):
    pass


class ModelError(FuzzyModalError):
    pass


class PseudometricError(FuzzyModalError):
    pass


class UnboundVariableError(FuzzyModalError):
    def __init__(self, variable):
        super().__init__(f"unbound free variable {variable!r}")
        self.variable = variable


class NotNonExpansiveError(FuzzyModalError):
    """A state function violates |f(a) - f(b)| <= d(a, b) at ``pair``."""

    def __init__(self, pair, gap, distance):
        a, b = pair
        super().__init__(
            f"function is not non-expansive: |f({a}) - f({b})| = {gap} > d({a},{b}) = {distance}"
        )
        self.pair = pair
        self.gap = gap
        self.distance = distance


class IllegalMoveError(FuzzyModalError):
    pass


class GameSizeError(FuzzyModalError):
    pass
