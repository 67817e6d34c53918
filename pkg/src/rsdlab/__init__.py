"""Random self-decomposability: component transforms, validity and simulation."""
from .kernels import BACKEND
from .errors import (DomainError, RangeError, RSDError, UnsupportedFamilyError, UsageError,
                     ZeroDivisorError)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DomainError",
    "RangeError",
    "RSDError",
    "UnsupportedFamilyError",
    "UsageError",
    "ZeroDivisorError",
    "__version__",
]
