"""Component transforms of a characteristic function.

Given a CF ``f`` and a Laplace transform ``phi``:

* ``f_c(t) = f(t) / f(c t)``, the self-decomposability component;
* ``f_theta(t) = phi(theta * phi^{-1}(f(t)))``, the random-index component;
* ``f_{c,theta}(t) = f_c(t) * f_theta(c t)``, the mixed component.

``f`` is self-decomposable when every ``f_c`` is a CF, N-infinitely
divisible when every ``f_theta`` is, and randomly self-decomposable when
every ``f_{c,theta}`` is.

The numeric path applies ``phi^{-1}`` only to real values in (0, 1]. CFs that
carry an exact representation ``f = phi(psi)`` can be evaluated through
``psi`` instead (``method="closed"``).
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RangeError, UnsupportedFamilyError, ZeroDivisorError
from .poincare import lt_inverse
from .transforms import EvalGrid, ScalarCF, SymStable, default_grid, write_curves_csv
from .validity import bochner_test, complete_monotone_test, no_real_zero_scan

ZERO_DIVISOR_TOL = 1e-14
_REAL_TOL = 1e-14


def _pts(grid):
    return np.asarray(getattr(grid, "points", grid), dtype=float)


def _check_c(c):
    if not (0.0 < c <= 1.0):
        raise DomainError(f"c must lie in (0, 1], got {c!r}")


def _check_theta(theta, open_left=False):
    lo_ok = theta > 0.0 if open_left else theta >= 0.0
    if not (lo_ok and theta < 1.0):
        interval = "(0, 1)" if open_left else "[0, 1)"
        raise DomainError(f"theta must lie in {interval}, got {theta!r}")


def sd_component(f, c, grid):
    """f(t) / f(ct) on the grid."""
    _check_c(c)
    t = _pts(grid)
    den = f(c * t)
    small = np.abs(den) < ZERO_DIVISOR_TOL
    if small.any():
        t0 = float(t[np.flatnonzero(small)[0]])
        raise ZeroDivisorError(f"|f(ct)| < {ZERO_DIVISOR_TOL:g} at t={t0!r}", t=t0)
    if c == 1.0:
        return np.ones(t.shape, dtype=complex)
    num = f(t)
    # numpy's complex division is not correctly rounded; stay real when possible
    if not (num.imag.any() or den.imag.any()):
        return (num.real / den.real).astype(complex)
    return num / den


def _real_unit_values(f, t):
    v = f(t)
    re = v.real
    bad = (np.abs(v.imag) > _REAL_TOL) | ~(re > 0) | (re > 1)
    if bad.any():
        i = np.flatnonzero(bad)[0]
        raise RangeError(
            f"f(t) must be real and in (0, 1]; f({float(t.flat[i])!r}) = {complex(v.flat[i])!r}",
            at=float(t.flat[i]))
    return re


def n_component(f, phi, theta, grid, method="numeric"):
    """phi(theta * phi^{-1}(f(t))) on the grid; theta = 0 gives 1."""
    _check_theta(theta)
    t = _pts(grid)
    if method == "closed":
        psi = f.nid_exponent(phi)
        if psi is None:
            raise UnsupportedFamilyError(f"{f.describe()} carries no representation over {phi.describe()}")
        return np.asarray(phi(theta * psi(t)), dtype=complex)
    if method != "numeric":
        raise ValueError(f"unknown method {method!r}")
    u = _real_unit_values(f, t)
    return np.asarray(phi(theta * lt_inverse(phi, u)), dtype=complex)


def composite_values(f, phi, c, theta, grid, method="numeric"):
    """f_c(t) * f_theta(ct)."""
    t = _pts(grid)
    return sd_component(f, c, t) * n_component(f, phi, theta, c * t, method)


class SDComponentCF(ScalarCF):
    family = "sd-component"

    def __init__(self, f, c):
        _check_c(c)
        self.f, self.c = f, float(c)
        self.is_real = f.is_real
        self.scale = f.scale

    def _eval(self, t):
        return sd_component(self.f, self.c, t)

    def describe(self):
        return f"sd-component({self.f.describe()}, c={self.c:g})"


class NComponentCF(ScalarCF):
    family = "n-component"

    def __init__(self, f, phi, theta, method="numeric"):
        _check_theta(theta)
        self.f, self.phi, self.theta, self.method = f, phi, float(theta), method
        self.scale = f.scale

    def _eval(self, t):
        return n_component(self.f, self.phi, self.theta, t, self.method)

    def describe(self):
        return f"n-component({self.f.describe()}, {self.phi.describe()}, theta={self.theta:g})"


class RSDCompositeCF(ScalarCF):
    family = "rsd-composite"

    def __init__(self, f, phi, c, theta, method="numeric"):
        _check_c(c)
        _check_theta(theta)
        self.f, self.phi, self.c, self.theta, self.method = f, phi, float(c), float(theta), method
        self.scale = f.scale

    def _eval(self, t):
        return composite_values(self.f, self.phi, self.c, self.theta, t, self.method)

    def describe(self):
        return (f"rsd-composite({self.f.describe()}, {self.phi.describe()}, "
                f"c={self.c:g}, theta={self.theta:g})")


CURVE_NAMES = ("f", "f_c", "f_theta", "f_c_theta")


@dataclass
class DecompositionReport:
    c: float
    theta: float
    family: str
    phi: str
    grid: EvalGrid
    curves: dict
    validity: dict = field(default_factory=dict)
    f_obj: object = field(default=None, repr=False)
    phi_obj: object = field(default=None, repr=False)

    @property
    def passed(self):
        return all(r.passed for checks in self.validity.values() for r in checks.values())

    def to_dict(self, include_curves=False):
        out = {
            "c": self.c,
            "theta": self.theta,
            "family": self.family,
            "phi": self.phi,
            "grid": {"points": len(self.grid), "extent": float(self.grid.points[-1])},
            "validity": {name: {test: r.to_dict() for test, r in checks.items()}
                         for name, checks in self.validity.items()},
            "passed": self.passed,
        }
        if include_curves:
            out["curves"] = {name: {"re": v.real.tolist(), "im": v.imag.tolist()}
                             for name, v in self.curves.items()}
        return out

    def to_csv(self, fh=None):
        desc = f"{self.family}; phi={self.phi}; c={self.c:g}; theta={self.theta:g}"
        return write_curves_csv({k: (self.grid.points, v) for k, v in self.curves.items()}, desc, fh)


def rsd_composite(f, phi, c, theta, grid=None, validate=True, method="numeric"):
    """Evaluate f, f_c, f_theta and f_{c,theta}, with per-curve verdicts.

    Validity uses the Bochner test on ``len(grid)`` lags (the grid must be
    equally spaced) plus a real-zero scan of the evaluated curve.
    """
    _check_c(c)
    _check_theta(theta)
    grid = grid if grid is not None else default_grid(f)
    t = grid.points
    fc = sd_component(f, c, t)
    ft = n_component(f, phi, theta, t, method)
    fct = fc * n_component(f, phi, theta, c * t, method)
    curves = {"f": f(t), "f_c": fc, "f_theta": ft, "f_c_theta": fct}
    report = DecompositionReport(float(c), float(theta), f.describe(), phi.describe(), grid, curves,
                                 f_obj=f, phi_obj=phi)
    if validate:
        fns = {"f": f, "f_c": SDComponentCF(f, c), "f_theta": NComponentCF(f, phi, theta, method),
               "f_c_theta": RSDCompositeCF(f, phi, c, theta, method)}
        for name in CURVE_NAMES:
            report.validity[name] = {
                "bochner": bochner_test(fns[name], grid),
                "no_real_zero": no_real_zero_scan(curves[name], grid),
            }
    return report


class NIDCF(ScalarCF):
    """f(t) = phi(-log h(t)) for an infinitely divisible h with positive values."""

    family = "nid"

    def __init__(self, phi, h):
        self.phi, self.h = phi, h
        self.scale = h.scale

    def _neg_log_h(self, t):
        if isinstance(self.h, SymStable):
            return -self.h.log_abs(t)
        v = self.h(t)
        bad = (np.abs(v.imag) > _REAL_TOL) | ~(v.real > 0)
        if bad.any():
            i = np.flatnonzero(bad)[0]
            raise DomainError(f"h must be real and positive; h({float(t.flat[i])!r}) = {complex(v.flat[i])!r}")
        return -np.log(v.real)

    def _eval(self, t):
        return self.phi(self._neg_log_h(t))

    def nid_exponent(self, phi):
        if abs(phi.alpha - self.phi.alpha) <= 1e-15 * phi.alpha:
            return self._neg_log_h
        return None

    def describe(self):
        return f"nid({self.phi.describe()}, h={self.h.describe()})"


def nid_construct(phi, h, grid=None):
    """The N-infinitely divisible CF phi(-log h(t))."""
    f = NIDCF(phi, h)
    if grid is not None:
        f._neg_log_h(_pts(grid))
    return f


def nid_inversion_residual(f, phi, theta, grid):
    """sup |f(t) - phi(phi^{-1}(f_theta(t)) / theta)|."""
    _check_theta(theta, open_left=True)
    t = _pts(grid)
    ft = n_component(f, phi, theta, t).real
    back = phi(lt_inverse(phi, ft) / theta)
    return float(np.max(np.abs(f(t) - back)))


@dataclass
class NStableReport:
    alpha: float
    lam: float
    c: float
    phi: str
    residual: float
    factorization_ok: bool
    cm: object
    message: str = ""

    @property
    def passed(self):
        return self.factorization_ok and self.cm.passed

    def to_dict(self):
        return {"alpha": self.alpha, "lam": self.lam, "c": self.c, "phi": self.phi,
                "residual": self.residual, "factorization_ok": self.factorization_ok,
                "complete_monotone": self.cm.to_dict(), "message": self.message,
                "passed": self.passed}


def nstable_factorization(phi, alpha, lam, c, grid, tol=1e-14, cm_order=8):
    """Check phi(lam|t|^a) = phi(c lam|t|^a) * phi_c(lam|t|^a), phi_c(s) = phi(s)/phi(cs).

    The factorization holds pointwise by construction; what carries content
    is whether phi_c is completely monotone, i.e. whether phi is the Laplace
    transform of a self-decomposable law.
    """
    if not (0 < alpha <= 2):
        raise DomainError(f"stable exponent must lie in (0, 2], got {alpha!r}")
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam!r}")
    _check_c(c)
    t = _pts(grid)
    s = lam * np.abs(t) ** alpha

    def phi_c(x):
        return phi(x) / phi(c * x)

    f = phi(s)
    res = float(np.max(np.abs(f - phi(c * s) * phi_c(s))))
    cm = complete_monotone_test(phi_c, max_order=cm_order)
    msg = "" if cm.passed else f"phi not SD at order {cm.evidence['first_violation_order']}"
    return NStableReport(float(alpha), float(lam), float(c), phi.describe(), res, res <= tol, cm, msg)


def phi_rsd_component(f, phi, theta, grid, experimental=False):
    """Experimental continuous mirror of the discrete phi-RSD component: 1 - theta*phi^{-1}(f(t)).

    Off unless ``experimental=True``; no fidelity claim is made for it.
    """
    if not experimental:
        raise UnsupportedFamilyError("continuous phi-RSD component is experimental; pass experimental=True")
    _check_theta(theta, open_left=True)
    t = _pts(grid)
    u = _real_unit_values(f, t)
    return (1.0 - theta * lt_inverse(phi, u)).astype(complex)
