"""Exception types shared across the package."""


class ChainError(Exception):
    """Base class for all errors raised by :mod:`monogenic_chain`."""


class DimensionMismatch(ChainError, ValueError):
    """Operands live in Clifford algebras of different dimension."""


class PoleError(ChainError, ValueError):
    """A Gamma function was requested at a nonpositive integer."""


class DomainError(ChainError, ValueError):
    """An argument lies outside the domain of the requested function."""


class PiPowerMismatch(ChainError, ArithmeticError):
    """Two symbolic constants with different powers of pi were added."""


class UnsupportedRequest(ChainError, ValueError):
    """The requested object exists mathematically but has no closed form here."""


class SingularityError(ChainError, ValueError):
    """A kernel was evaluated at its singular point."""


class ConvolutionUndefined(ChainError, ValueError):
    """A convolution falls into an excluded parameter set."""


class DimensionTooSmall(DomainError):
    """A boundary value or kernel needs a larger dimension m."""


class EvaluationError(ChainError, ArithmeticError):
    """A kernel produced a non-finite value inside a difference stencil."""
