"""Exception hierarchy shared by the pipeline stages."""


class HolozerosError(Exception):
    """Base class for every error raised by this package."""


# -- bad input -------------------------------------------------------------

class InvalidInput(HolozerosError, ValueError):
    """The user-supplied data falls outside the supported class."""


class DenominatorNotUnit(InvalidInput):
    pass


class NotAUnit(InvalidInput):
    pass


class NotDivisible(InvalidInput):
    pass


class RecurrenceError(InvalidInput):
    pass


class TrailingNotConstant(RecurrenceError):
    pass


class TrailingZero(RecurrenceError):
    pass


class BadInitialLength(RecurrenceError):
    pass


class NotMonicForm(RecurrenceError):
    pass


class ExtensionModeUnsupported(RecurrenceError):
    pass


class NotAdmissible(InvalidInput):
    pass


class NoAdmissiblePrime(InvalidInput):
    pass


class DegreeHypothesisViolated(InvalidInput):
    pass


# -- resource limits ---------------------------------------------------------

class PeriodCapExceeded(HolozerosError):
    pass


class PrecisionExhausted(HolozerosError):
    pass


# -- "cannot happen" --------------------------------------------------------

class InvariantViolation(HolozerosError, AssertionError):
    """An internal consistency check failed; indicates a bug, not bad input."""


class SingularReduction(InvariantViolation):
    pass


class DefectNotDivisible(InvariantViolation):
    pass


class TmStructureViolated(InvariantViolation):
    pass


class InternalSoundness(InvariantViolation):
    pass
