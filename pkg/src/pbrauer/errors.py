"""Exception hierarchy shared by all modules.

Everything mathematical derives from AlgebraError so callers can separate
"the input rejected for a mathematical reason" from ordinary bugs.
"""


class AlgebraError(Exception):
    pass


class DivisionByZero(AlgebraError):
    pass


class NonUnit(AlgebraError):
    """A truncated-ring element required to be a unit is not one."""


class ZeroEntry(AlgebraError):
    """A symbol entry that must be nonzero is zero."""


class DependentGenerators(AlgebraError):
    """Generators required to be p-independent fail the Jacobian test."""


class HypothesisFailed(AlgebraError):
    """A certificate's hypotheses do not hold for the given data."""


class LevelOutOfRange(AlgebraError):
    """Filtration level outside 1..M."""


class NotInLevel(AlgebraError):
    """Class exhibits a nonzero graded datum below the requested level."""


class NotInBr1(AlgebraError):
    """Class has nontrivial level-0 datum; normal form is not defined.

    Carries the offending datum in .datum.
    """

    def __init__(self, message, datum=None):
        super().__init__(message)
        self.datum = datum


class UnresolvedSymbolRelation(AlgebraError):
    """The residue symbols sum to zero in k2 but the rewriting rules cannot
    exhibit the cancellation.  Raised instead of silently guessing."""


class BadSpecialization(AlgebraError):
    """A numerator or denominator specializes to an even integer, so the
    2-adic symbol of the point is not determined by the truncated data."""


class UnsupportedPrime(AlgebraError):
    """Operation is only instantiated for p = 2."""


class ParseError(AlgebraError):
    """Syntax error in an input expression.  Carries .position (0-based)."""

    def __init__(self, message, position=None):
        if position is not None:
            message = "%s (at position %d)" % (message, position)
        super().__init__(message)
        self.position = position
