"""Exception hierarchy shared by all modules."""


class TensorLieError(Exception):
    """Base class for all errors raised by the package."""


class MixedFieldsError(TensorLieError, TypeError):
    pass


class DivisionByZero(TensorLieError, ZeroDivisionError):
    pass


class AmbientMismatch(TensorLieError, ValueError):
    pass


class RowWidthMismatch(TensorLieError, ValueError):
    pass


class FlavorMismatch(TensorLieError, ValueError):
    pass


class FlavorCertificationError(TensorLieError, ValueError):
    """A declared flavor failed its identity check."""

    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class NotDualPair(TensorLieError, ValueError):
    pass


class JacobiViolation(TensorLieError, ArithmeticError):
    def __init__(self, message, counterexample=None):
        super().__init__(message)
        self.counterexample = counterexample


class CharDividesN(TensorLieError, ValueError):
    pass


class NotDerivation(TensorLieError, ValueError):
    pass


class XiNotDInvariant(TensorLieError, ValueError):
    pass


class FormNotInvariant(TensorLieError, ValueError):
    pass


class NotCyclicCocycle(TensorLieError, ValueError):
    pass


class NotQuasiCharacter(TensorLieError, ValueError):
    def __init__(self, witness):
        a, b, c = witness
        super().__init__(f"quasi-character identity fails at (a, b, c) = {witness}")
        self.witness = witness


class NotASemigroup(TensorLieError, ValueError):
    pass


class BadParams(TensorLieError, ValueError):
    pass


class DimCapExceeded(TensorLieError, ValueError):
    pass


class SideConditionViolated(TensorLieError, ValueError):
    def __init__(self, which, message=""):
        super().__init__(f"side condition violated: {which}" + (f" ({message})" if message else ""))
        self.which = which


class NotARepresentation(TensorLieError, ValueError):
    def __init__(self, pair, message=""):
        super().__init__(f"action fails the representation law at {pair}" + (f": {message}" if message else ""))
        self.pair = pair


class DegreeCapExceeded(TensorLieError, ValueError):
    pass


class ParseError(TensorLieError, ValueError):
    pass
