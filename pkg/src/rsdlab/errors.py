"""Exception hierarchy shared by all modules."""


class RSDError(Exception):
    """Base class for rsdlab errors."""


class DomainError(RSDError, ValueError):
    """A parameter or argument lies outside the admissible domain."""


class UsageError(RSDError, ValueError):
    """Malformed call: empty batch, non-uniform grid, unknown family, ..."""


class ZeroDivisorError(RSDError, ZeroDivisionError):
    """Denominator CF is (numerically) zero at a grid point."""

    def __init__(self, msg, t=None):
        super().__init__(msg)
        self.t = t


class RangeError(DomainError):
    """Function values fall outside the range an operator can accept."""

    def __init__(self, msg, at=None):
        super().__init__(msg)
        self.at = at


class UnsupportedFamilyError(UsageError):
    """No sampler or closed form exists for the requested family."""
