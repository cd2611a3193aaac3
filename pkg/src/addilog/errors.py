"""Exception hierarchy shared by every layer of the package."""


class AddilogError(Exception):
    """Base class for all library errors."""


class DivisionByZero(AddilogError, ZeroDivisionError):
    pass


class DescriptorMismatch(AddilogError, TypeError):
    pass


class CoercionError(DescriptorMismatch):
    pass


class IrreducibilityFailure(AddilogError, ValueError):
    pass


class UnsupportedFactorization(AddilogError):
    def __init__(self, mode, field):
        super().__init__(f"factorization mode {mode!r} is not implemented over {field}")
        self.mode = mode
        self.field = field


class UnsupportedField(AddilogError):
    pass


class UnsupportedPlace(AddilogError):
    pass


class ZeroInput(AddilogError, ValueError):
    pass


class TruncationError(AddilogError, ArithmeticError):
    """A series coefficient at or beyond the truncation order was requested."""


class InseparableGenerator(AddilogError):
    pass


class ZeroMultiplicativeEntry(AddilogError, ValueError):
    pass


class DegenerateArgument(AddilogError, ValueError):
    pass


class DegeneratePair(DegenerateArgument):
    pass


class DegenerateWeights(DegenerateArgument):
    pass


class DegenerateParams(DegenerateArgument):
    pass


class InvalidSymbol(AddilogError, ValueError):
    pass


class NonSplit(AddilogError):
    def __init__(self, polynomial, message=None):
        super().__init__(message or f"special locus does not split into linear factors: {polynomial}")
        self.polynomial = polynomial


class UnverifiedHint(AddilogError, ValueError):
    pass


class ZeroWeight(AddilogError, ValueError):
    pass


class NotWeightTwo(AddilogError, ValueError):
    pass


class NotGoodPosition(AddilogError):
    pass


class ExtensionDegreeExceeded(AddilogError):
    pass


class ComponentOnFace(AddilogError, ValueError):
    pass


class BadSupport(AddilogError, ValueError):
    pass


class InseparableResidueField(AddilogError):
    pass


class BadGenerator(AddilogError, ValueError):
    pass


class PreconditionFailed(AddilogError):
    pass


class RingMismatch(AddilogError, TypeError):
    pass


class LevelMismatch(AddilogError, ValueError):
    pass


class ParseError(AddilogError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class UnknownVariable(ParseError):
    pass
