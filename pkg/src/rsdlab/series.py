"""Truncated power series in one variable, float64 coefficients.

All arithmetic is the formal operation truncated at the result order; no
renormalization happens behind the caller's back. Binary operations return
the smaller of the two operand orders.
"""
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import DomainError, UsageError
from .validity import ValidityReport

DEFAULT_ORDER = 64
VALIDITY_ORDER = 200
NONNEG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class TruncSeries:
    """Coefficients a_0..a_{n-1} of a power series known modulo s^n."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise UsageError("series needs at least one coefficient")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @property
    def order(self):
        return self.coeffs.size

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, n):
        if n > self.order:
            raise UsageError(f"cannot extend a series of order {self.order} to {n}")
        return TruncSeries(self.coeffs[:n])

    def __call__(self, s):
        """Evaluate the truncated polynomial (Horner)."""
        s = np.asarray(s)
        out = np.zeros(s.shape, dtype=np.result_type(s, float))
        for a in self.coeffs[::-1]:
            out = out * s + a
        return out

    def __add__(self, other):
        return series_add(self, _lift(other, self.order))

    __radd__ = __add__

    def __neg__(self):
        return TruncSeries(-self.coeffs)

    def __sub__(self, other):
        return series_add(self, -_lift(other, self.order))

    def __rsub__(self, other):
        return series_add(_lift(other, self.order), -self)

    def __mul__(self, other):
        if np.isscalar(other):
            return TruncSeries(self.coeffs * other)
        return series_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return TruncSeries(self.coeffs / other)
        return series_div(self, other)

    def __rtruediv__(self, other):
        return series_div(_lift(other, self.order), self)

    def __repr__(self):
        head = ", ".join(f"{x:.6g}" for x in self.coeffs[:6])
        more = ", ..." if self.order > 6 else ""
        return f"TruncSeries([{head}{more}], order={self.order})"


def _lift(x, n):
    if isinstance(x, TruncSeries):
        return x
    return constant(float(x), n)


def constant(value, n=DEFAULT_ORDER):
    c = np.zeros(n)
    c[0] = value
    return TruncSeries(c)


def monomial(power, n=DEFAULT_ORDER, coeff=1.0):
    c = np.zeros(n)
    if power < n:
        c[power] = coeff
    return TruncSeries(c)


def variable(n=DEFAULT_ORDER):
    """The series ``s``."""
    return monomial(1, n)


def affine(shift, scale, n=DEFAULT_ORDER):
    """The series ``shift + scale*s``."""
    c = np.zeros(n)
    c[0] = shift
    if n > 1:
        c[1] = scale
    return TruncSeries(c)


def from_coeffs(coeffs, n=None):
    c = np.asarray(coeffs, dtype=float)
    if n is not None:
        c = np.concatenate([c[:n], np.zeros(max(0, n - c.size))])
    return TruncSeries(c)


def series_add(a, b):
    n = min(a.order, b.order)
    return TruncSeries(a.coeffs[:n] + b.coeffs[:n])


def series_mul(a, b):
    n = min(a.order, b.order)
    return TruncSeries(kernels.trunc_mul(a.coeffs[:n], b.coeffs[:n], n))


def series_div(a, b):
    if b.coeffs[0] == 0.0:
        raise DomainError("division by a series with zero constant term")
    n = min(a.order, b.order)
    return TruncSeries(kernels.trunc_div(a.coeffs[:n], b.coeffs[:n], n))


def series_exp(a):
    return TruncSeries(kernels.trunc_exp(a.coeffs, a.order))


def series_log(a):
    if a.coeffs[0] <= 0.0:
        raise DomainError(f"log of a series needs a positive constant term, got {a.coeffs[0]!r}")
    return TruncSeries(kernels.trunc_log(a.coeffs, a.order))


def series_real_pow(a, r):
    """a**r = a0**r * exp(r * log(a / a0)) for a0 > 0."""
    a0 = a.coeffs[0]
    if a0 <= 0.0:
        raise DomainError(f"real power needs a positive constant term, got {a0!r}")
    if r == 0:
        return constant(1.0, a.order)
    lg = kernels.trunc_log(a.coeffs / a0, a.order)
    return TruncSeries(a0 ** r * kernels.trunc_exp(r * lg, a.order))


def _is_affine(b):
    return b.order <= 2 or not np.any(b.coeffs[2:])


def series_compose(a, b, order=None):
    """Coefficients of a(b(s)).

    Exact (up to truncation) when ``b(0) == 0``. For an affine inner series
    with nonzero constant term every stored coefficient of ``a`` contributes
    to every output coefficient, so the result is exact only up to the tail
    of ``a`` beyond its order; callers control that tail by expanding ``a``
    further than the order they need.
    """
    n = order if order is not None else min(a.order, b.order) if b.coeffs[0] == 0.0 else a.order
    if b.coeffs[0] == 0.0:
        bb = from_coeffs(b.coeffs, n)
        out = constant(0.0, n)
        for am in a.coeffs[: n][::-1]:
            out = series_mul(out, bb) + am
        return out
    if _is_affine(b):
        scale = b.coeffs[1] if b.order > 1 else 0.0
        return TruncSeries(kernels.affine_compose(a.coeffs, b.coeffs[0], scale, n))
    raise UsageError("composition center mismatch: inner series has a nonzero constant term "
                     "and is not affine")


def coeff_nonneg(a, tol=NONNEG_TOL):
    """Pass iff every coefficient is >= -tol; on failure report the first offender."""
    c = a.coeffs
    bad = np.flatnonzero(c < -tol)
    if bad.size:
        i = int(bad[0])
        return ValidityReport(
            "fail",
            test="coeff-nonneg",
            evidence={"index": i, "value": float(c[i]), "min": float(c.min())},
            resolution={"order": a.order, "tol": tol},
        )
    return ValidityReport(
        "pass",
        test="coeff-nonneg",
        evidence={"min": float(c.min()), "argmin": int(np.argmin(c))},
        resolution={"order": a.order, "tol": tol},
    )
