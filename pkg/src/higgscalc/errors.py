"""Exception hierarchy.

Every error raised by the engine derives from HiggsCalcError so the CLI can
map failures to documented exit codes.
"""


class HiggsCalcError(Exception):
    """Base class for all engine errors."""


class MalformedLabelError(HiggsCalcError):
    """Weight tuple is not weakly decreasing."""


class NonCanonicalLabelError(HiggsCalcError):
    """Label violates the last-entry-zero normal form."""


class DimensionMismatchError(HiggsCalcError):
    """Operands live over a different number of torus variables."""


class NotARepresentationError(HiggsCalcError):
    """Character decomposition hit a negative multiplicity."""

    def __init__(self, message, label=None, coefficient=None):
        super().__init__(message)
        self.label = label
        self.coefficient = coefficient


class LefschetzError(HiggsCalcError):
    """Primitive-part subtraction went negative (input outside the valid range)."""


class NotASubsystemError(HiggsCalcError):
    """Claimed sub-system is not theta-stable inside its ambient system."""


class NotRegularWeightError(HiggsCalcError):
    """Requested highest weight is not regular (some index is zero)."""


class FlatnessError(HiggsCalcError):
    """theta wedge theta or d squared failed to vanish; indicates an engine bug."""


class WrongWeightError(HiggsCalcError):
    """System weight does not match what the operation requires."""


class ResourceLimitError(HiggsCalcError):
    """Fiber realization would exceed the configured rank limit."""


class ParseError(HiggsCalcError):
    """Expression text failed to lex or parse; carries a byte offset."""

    def __init__(self, message, position):
        super().__init__(f"{message} (at offset {position})")
        self.position = position


class EvalError(HiggsCalcError):
    """Expression is grammatical but cannot be evaluated."""
