"""Exception types raised by the algebra and homology layers."""


class CharquantError(ValueError):
    """Base class for all package-specific errors."""


class ModulusMismatch(CharquantError):
    pass


class FlavorMismatch(CharquantError):
    pass


class VariableMismatch(CharquantError):
    pass


class BoundsTooSmall(CharquantError):
    pass


class ArityMismatch(CharquantError):
    pass


class IndexOutOfRange(CharquantError):
    pass


class CoefficientMismatch(CharquantError):
    pass


class TooManyInserts(CharquantError):
    pass


class CompositionNonzero(CharquantError):
    pass


class ShapeMismatch(CharquantError):
    pass


class TruncationTooSmall(CharquantError):
    pass


class UnsupportedCombination(CharquantError):
    pass
