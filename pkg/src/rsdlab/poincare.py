"""Laplace transforms phi(s) = (1+s)^(-alpha) and their random-index PGFs.

For alpha = 1/k the function P_theta(s) = phi(phi^{-1}(s) / theta) is the PGF
of a positive integer-valued index N_theta: geometric when k = 1, Harris on
1 + k*Z_+ when k >= 2. Together (phi, P_theta) satisfy the Poincare
functional equation phi(t) = P_theta(phi(theta*t)).
"""
from dataclasses import dataclass

import numpy as np

from . import series as ser
from .errors import DomainError


def _k_of(alpha, tol=1e-12):
    k = round(1.0 / alpha)
    if k >= 1 and abs(1.0 / alpha - k) <= tol * k:
        return int(k)
    return None


@dataclass(frozen=True)
class LTFamily:
    """Exponential-mixture Laplace transform (1+s)^(-alpha) on s >= 0."""

    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (np.isfinite(a) and a > 0):
            raise DomainError(f"alpha must be a positive finite real, got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)

    @classmethod
    def from_k(cls, k):
        if int(k) != k or k < 1:
            raise DomainError(f"k must be a positive integer, got {k!r}")
        return cls(1.0 / int(k))

    @property
    def k(self):
        """Integer k with alpha = 1/k, or None."""
        return _k_of(self.alpha)

    @property
    def kind(self):
        return "exponential-mixture"

    def __call__(self, s):
        s = np.asarray(s)
        if np.iscomplexobj(s):
            return (1.0 + s) ** (-self.alpha)
        return np.exp(-self.alpha * np.log1p(s))

    def inverse(self, u):
        return lt_inverse(self, u)

    def describe(self):
        k = self.k
        return f"(1+s)^(-1/{k})" if k else f"(1+s)^(-{self.alpha:g})"


def exponential_mixture(alpha):
    return LTFamily(alpha)


def lt_inverse(phi, u):
    """s >= 0 with phi(s) = u, for real u in (0, 1]."""
    u = np.asarray(u, dtype=float)
    if np.any(~(u > 0)) or np.any(u > 1):
        bad = u[~((u > 0) & (u <= 1))].ravel()
        raise DomainError(f"inverse Laplace transform needs u in (0, 1], got {float(bad[0])!r}")
    # u^(-1/alpha) - 1 without cancellation near u = 1
    return np.expm1(-np.log(u) / phi.alpha)


@dataclass(frozen=True)
class IndexPGF:
    """PGF of N_theta, a positive integer index with mean 1/theta."""

    theta: float
    parent: LTFamily

    @property
    def k(self):
        return self.parent.k

    @property
    def tag(self):
        return "geometric" if self.k == 1 else f"harris({self.k})"

    @property
    def mean(self):
        return 1.0 / self.theta

    def __call__(self, s):
        s = np.asarray(s)
        th, k = self.theta, self.k
        # 1 - (1-th) s^k written as th + (1-th)(1-s^k): exact at s = 1
        den = th + (1.0 - th) * (1.0 - s ** k)
        if k == 1:
            return th * s / den
        return s * (th / den) ** (1.0 / k)

    def compose_numeric(self, s):
        """phi(phi^{-1}(s)/theta) evaluated literally; the oracle for ``__call__``."""
        return self.parent(lt_inverse(self.parent, s) / self.theta)

    def series(self, order=ser.DEFAULT_ORDER):
        """Coefficients P(N = m), m = 0..order-1."""
        k = self.k
        inner = ser.constant(1.0, order) - ser.monomial(k, order, 1.0 - self.theta)
        body = ser.series_real_pow(inner, -1.0 / k)
        return ser.series_mul(ser.variable(order), body) * self.theta ** (1.0 / k)

    def describe(self):
        return f"{self.tag}(theta={self.theta:g})"


def index_pgf(phi, theta):
    if not (0.0 < theta < 1.0):
        raise DomainError(f"theta must lie in (0, 1), got {theta!r}")
    if phi.k is None:
        raise DomainError(
            f"alpha={phi.alpha:g} is not 1/k for an integer k; phi(phi^-1(s)/theta) is then "
            "not the PGF of a non-degenerate law")
    return IndexPGF(float(theta), phi)


def poincare_residual(phi, theta, grid):
    """sup_t |phi(t) - P_theta(phi(theta*t))| over a nonnegative grid."""
    t = np.asarray(getattr(grid, "points", grid), dtype=float)
    if np.any(t < 0):
        raise DomainError("Poincare residual is defined on t >= 0")
    P = index_pgf(phi, theta)
    return float(np.max(np.abs(phi(t) - P(phi(theta * t)))))
