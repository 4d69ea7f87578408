"""Monogenic potential chain in upper half-space.

The package is layered as follows:

* :mod:`.constants` exact ``q * pi^(p/2)`` arithmetic and Gamma values
* :mod:`.clifford` Clifford algebra and finite-difference operators
* :mod:`.special` auxiliary integrals and hypergeometric helpers
* :mod:`.kernels` the chain kernels ``A_n``, ``B_n``, ``C_n``
* :mod:`.distributions` exact convolution calculus of boundary values
* :mod:`.lemmas` catalog of exact identities
* :mod:`.harness` numeric residual checks
"""

from .clifford import *  # noqa: F401,F403
from .constants import *  # noqa: F401,F403
from .distributions import *  # noqa: F401,F403
from .errors import (  # noqa: F401
    ChainError,
    ConvolutionUndefined,
    DimensionMismatch,
    DimensionTooSmall,
    DomainError,
    EvaluationError,
    PiPowerMismatch,
    PoleError,
    SingularityError,
    UnsupportedRequest,
)
from .harness import *  # noqa: F401,F403
from .kernels import *  # noqa: F401,F403
from .lemmas import *  # noqa: F401,F403
from .special import *  # noqa: F401,F403

__version__ = "0.1.0"
