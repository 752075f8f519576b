"""Exception hierarchy.

``ParseError`` covers malformed input (CLI exit code 1); everything deriving
from ``MathError`` is a typed failure of a well-formed computation (exit 2).
"""


class SolvcoError(Exception):
    pass


class ParseError(SolvcoError, ValueError):
    pass


class MathError(SolvcoError):
    pass


class DivisionByZero(MathError, ZeroDivisionError):
    pass


class UnboundParameter(MathError):
    pass


class DenominatorVanishes(MathError):
    pass


class NonSquare(MathError):
    pass


class NotSemisimple(MathError):
    pass


class NotCommuting(MathError):
    pass


class FieldTooSmall(MathError):
    def __init__(self, message, factor=None):
        super().__init__(message)
        self.factor = factor


class JacobiFails(MathError):
    def __init__(self, i, j, k, names=None):
        msg = f"Jacobi identity fails on basis triple ({i}, {j}, {k})"
        if names is not None:
            msg += f" = ({names[i]}, {names[j]}, {names[k]})"
        super().__init__(msg)
        self.triple = (i, j, k)


class NotSolvable(MathError):
    pass


class RegularElementNotFound(MathError):
    pass


class HullBracketInvalid(MathError):
    pass


class WeightNotClosed(MathError):
    pass


class QuasiIsoFails(MathError):
    pass


class NotComposable(MathError):
    pass


class NotSymplectic(MathError):
    pass


class OddDimension(MathError):
    pass


class NonCommutingAction(MathError):
    pass


class UnsupportedTranscendence(MathError):
    pass


class UndecidableWithParameters(MathError):
    pass


class DimensionTooLarge(MathError):
    pass
