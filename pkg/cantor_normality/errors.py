"""Exceptions for the Cantor series toolkit.

Every error carries the process exit code the CLI reports for it:

    2  precondition or spec error
    3  precision unreachable
    4  resource limit
"""


class CantorError(ValueError):
    """Base class for all errors raised by cantor_normality."""
    exit_code = 2


class InvalidSpec(CantorError):
    """A GeneratorSpec or construction spec is malformed."""


class HorizonExceeded(CantorError):
    """A rational stand-in for an irrational was asked for too many terms."""
    exit_code = 4


class NotExtendable(CantorError):
    """The substitution image of the start letter does not begin with it."""


class NotPrimitive(CantorError):
    """No power of the substitution up to t_max reaches every letter."""


class NotGrowing(CantorError):
    """Some letter is not mapped to a word of length at least 2."""


class OutOfRange(CantorError):
    """A value that must lie in [0, 1) does not."""


class InadmissibleDigit(CantorError):
    """A digit x_n is not in [0, q_n)."""


class PrecisionUnreachable(CantorError):
    """Not enough digits are available to reach the requested precision."""
    exit_code = 3


class LengthMismatch(CantorError):
    """Paired blocks or streams have different lengths."""


class EmptySample(CantorError):
    """An orbit sample has no points."""


class BadDensity(CantorError):
    """A piecewise-constant density does not partition [0,1) or integrate to 1."""


class NotGPower(CantorError):
    """A base is not an exact power of g."""


class BadParams(CantorError):
    """Parameters outside their documented range."""


class SourceExhausted(CantorError):
    """A finite digit or base source ran out."""
    exit_code = 4


class MismatchedRadix(CantorError):
    """The period product of a pattern does not equal the source radix."""


class UnsupportedModel(CantorError):
    """The generator model has no interval geometry."""
