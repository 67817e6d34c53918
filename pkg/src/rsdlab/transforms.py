"""Characteristic functions, evaluation grids and the empirical CF.

Every CF object is callable on an array of real abscissae and returns
complex128 values. Closed-form families are immutable; parameters are
checked at construction.
"""
import csv
import io
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, UsageError

DEFAULT_GRID_POINTS = 129
DEFAULT_GRID_EXTENT = 10.0

GRID_KINDS = ("symmetric", "nonnegative", "unit-interval")


@dataclass(frozen=True)
class EvalGrid:
    """Strictly increasing abscissae with a declared kind."""

    points: np.ndarray
    kind: str = "symmetric"

    def __post_init__(self):
        pts = np.array(self.points, dtype=float)
        if pts.ndim != 1 or pts.size == 0:
            raise UsageError("grid must be a non-empty 1-d array")
        if not np.all(np.isfinite(pts)):
            raise UsageError("grid points must be finite")
        if pts.size > 1 and not np.all(np.diff(pts) > 0):
            raise UsageError("grid points must be strictly increasing")
        if self.kind not in GRID_KINDS:
            raise UsageError(f"unknown grid kind {self.kind!r}")
        if self.kind == "symmetric":
            if not np.allclose(pts, -pts[::-1], rtol=0, atol=1e-12 * max(1.0, np.abs(pts).max())):
                raise UsageError("symmetric grid must be sign-symmetric")
            if pts.size % 2 == 1 and pts[pts.size // 2] != 0.0:
                raise UsageError("odd symmetric grid must contain 0")
        elif self.kind == "nonnegative" and pts[0] < 0:
            raise UsageError("nonnegative grid has negative points")
        elif self.kind == "unit-interval" and (pts[0] < 0 or pts[-1] > 1):
            raise UsageError("unit-interval grid must lie in [0, 1]")
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    @classmethod
    def symmetric(cls, extent=DEFAULT_GRID_EXTENT, n=DEFAULT_GRID_POINTS):
        pts = np.linspace(-extent, extent, n)
        # exact sign symmetry; linspace alone can be off by an ulp
        pts = (pts - pts[::-1]) / 2
        return cls(pts, "symmetric")

    @classmethod
    def nonnegative(cls, tmax, n=DEFAULT_GRID_POINTS):
        return cls(np.linspace(0.0, tmax, n), "nonnegative")

    @classmethod
    def unit_interval(cls, n=101):
        return cls(np.linspace(0.0, 1.0, n), "unit-interval")

    def __len__(self):
        return self.points.size

    @property
    def spacing(self):
        """Common step, or ``None`` if the grid is not equally spaced."""
        if self.points.size < 2:
            return None
        d = np.diff(self.points)
        h = (self.points[-1] - self.points[0]) / (self.points.size - 1)
        if np.allclose(d, h, rtol=1e-9, atol=0):
            return float(h)
        return None


def default_grid(f=None, n=DEFAULT_GRID_POINTS):
    """129 points on [-10b, 10b], b the family's scale."""
    b = getattr(f, "scale", 1.0) if f is not None else 1.0
    return EvalGrid.symmetric(DEFAULT_GRID_EXTENT * b, n)


def _as_t(t):
    return np.asarray(t, dtype=float)


class ScalarCF:
    """Base class. Subclasses implement ``_eval`` on a float array."""

    family = "abstract"
    scale = 1.0
    #: True when the CF is real-valued (symmetric law)
    is_real = True

    def __call__(self, t):
        t = _as_t(t)
        return np.asarray(self._eval(t), dtype=complex)

    def _eval(self, t):
        raise NotImplementedError

    def params(self):
        return {}

    def describe(self):
        p = ", ".join(f"{k}={v:g}" if isinstance(v, (int, float)) else f"{k}={v}"
                      for k, v in self.params().items())
        return f"{self.family}({p})"

    def nid_exponent(self, phi):
        """Return psi with f = phi(psi(t)), if this family carries one for ``phi``."""
        return None

    def __repr__(self):
        return self.describe()


def _check_positive(name, x):
    if not (isinstance(x, (int, float, np.floating)) and math.isfinite(x) and x > 0):
        raise DomainError(f"{name} must be a positive finite real, got {x!r}")
    return float(x)


def _same_alpha(phi, alpha):
    a = getattr(phi, "alpha", None)
    return a is not None and abs(a - alpha) <= 1e-15 * alpha


class Laplace(ScalarCF):
    """Symmetric Laplace law with scale b: 1/(1 + b^2 t^2)."""

    family = "laplace"

    def __init__(self, b=1.0):
        self.b = _check_positive("b", b)
        self.scale = self.b

    def _eval(self, t):
        return 1.0 / (1.0 + (self.b * t) ** 2)

    def params(self):
        return {"b": self.b}

    def nid_exponent(self, phi):
        if _same_alpha(phi, 1.0):
            return lambda t: (self.b * _as_t(t)) ** 2
        return None


class Linnik(ScalarCF):
    """Linnik (symmetric geometric-stable) law: 1/(1 + lam |t|^alpha)."""

    family = "linnik"

    def __init__(self, alpha, lam=1.0):
        if not (0 < alpha <= 2):
            raise DomainError(f"Linnik alpha must lie in (0, 2], got {alpha!r}")
        self.alpha = float(alpha)
        self.lam = _check_positive("lam", lam)
        self.scale = self.lam ** (1.0 / self.alpha)

    def _eval(self, t):
        return 1.0 / (1.0 + self.lam * np.abs(t) ** self.alpha)

    def params(self):
        return {"alpha": self.alpha, "lam": self.lam}

    def nid_exponent(self, phi):
        if _same_alpha(phi, 1.0):
            return lambda t: self.lam * np.abs(_as_t(t)) ** self.alpha
        return None


class SymGammaMixture(ScalarCF):
    """Normal variance mixture over Gamma(1/k): (1 + b^2 t^2)^(-1/k)."""

    family = "symgamma"

    def __init__(self, k, b=1.0):
        self.k = _check_positive("k", k)
        self.b = _check_positive("b", b)
        self.scale = self.b

    def _eval(self, t):
        return (1.0 + (self.b * t) ** 2) ** (-1.0 / self.k)

    def params(self):
        return {"k": self.k, "b": self.b}

    def nid_exponent(self, phi):
        if _same_alpha(phi, 1.0 / self.k):
            return lambda t: (self.b * _as_t(t)) ** 2
        return None


class SymStable(ScalarCF):
    """Symmetric stable law exp(-lam |t|^alpha); infinitely divisible."""

    family = "symstable"

    def __init__(self, alpha, lam=1.0):
        if not (0 < alpha <= 2):
            raise DomainError(f"stable alpha must lie in (0, 2], got {alpha!r}")
        self.alpha = float(alpha)
        self.lam = _check_positive("lam", lam)
        self.scale = self.lam ** (1.0 / self.alpha)

    def _eval(self, t):
        return np.exp(-self.lam * np.abs(t) ** self.alpha)

    def params(self):
        return {"alpha": self.alpha, "lam": self.lam}

    def log_abs(self, t):
        return -self.lam * np.abs(_as_t(t)) ** self.alpha


class Degenerate(ScalarCF):
    """Point mass at ``a``."""

    family = "degenerate"

    def __init__(self, a=0.0):
        self.a = float(a)
        self.is_real = self.a == 0.0

    def _eval(self, t):
        if self.a == 0.0:
            return np.ones_like(t)
        return np.exp(1j * self.a * t)

    def params(self):
        return {"a": self.a}

    def nid_exponent(self, phi):
        if self.a == 0.0:
            return lambda t: np.zeros_like(_as_t(t))
        return None


class ProductCF(ScalarCF):
    """Pointwise product: the CF of an independent sum."""

    family = "product-of"

    def __init__(self, *factors):
        if not factors:
            raise UsageError("product needs at least one factor")
        self.factors = tuple(factors)
        self.is_real = all(f.is_real for f in factors)
        self.scale = max(f.scale for f in factors)

    def _eval(self, t):
        out = self.factors[0](t)
        for f in self.factors[1:]:
            out = out * f(t)
        return out

    def describe(self):
        return "product-of(" + ", ".join(f.describe() for f in self.factors) + ")"


class MixtureCF(ScalarCF):
    """Finite mixture sum_i w_i f_i."""

    family = "mixture-of"

    def __init__(self, weights, components):
        w = np.asarray(weights, dtype=float)
        if len(w) != len(components) or len(w) == 0:
            raise UsageError("weights and components must have equal, nonzero length")
        if np.any(w < 0) or abs(w.sum() - 1.0) > 1e-12:
            raise DomainError("mixture weights must be nonnegative and sum to 1")
        self.weights = tuple(float(x) for x in w)
        self.components = tuple(components)
        self.is_real = all(f.is_real for f in components)
        self.scale = max(f.scale for f in components)

    def _eval(self, t):
        out = np.zeros(t.shape, dtype=complex)
        for w, f in zip(self.weights, self.components):
            if w:
                out = out + w * f(t)
        return out

    def describe(self):
        parts = ", ".join(f"{w:g}*{f.describe()}" for w, f in zip(self.weights, self.components))
        return f"mixture-of({parts})"


class RawCF(ScalarCF):
    """Arbitrary callable, not necessarily a CF (used for negative controls)."""

    family = "raw"

    def __init__(self, name, fn, is_real=True, scale=1.0):
        self.name = name
        self.fn = fn
        self.is_real = is_real
        self.scale = scale

    def _eval(self, t):
        return self.fn(t)

    def describe(self):
        return f"raw({self.name})"


RAW_CURVES = {
    "expminus-t4": lambda t: np.exp(-t ** 4),
    "gaussian": lambda t: np.exp(-t ** 2 / 2),
    "triangular": lambda t: np.maximum(0.0, 1.0 - np.abs(t)),
    "one": lambda t: np.ones_like(t),
}


def raw_curve(name):
    try:
        fn = RAW_CURVES[name]
    except KeyError:
        raise UsageError(f"unknown raw curve {name!r}; choose from {sorted(RAW_CURVES)}") from None
    return RawCF(name, fn)


# factory shorthands
def laplace(b=1.0):
    return Laplace(b)


def linnik(alpha, lam=1.0):
    return Linnik(alpha, lam)


def symgamma(k, b=1.0):
    return SymGammaMixture(k, b)


def symstable(alpha, lam=1.0):
    return SymStable(alpha, lam)


def degenerate(a=0.0):
    return Degenerate(a)


def mixture(weights, components):
    return MixtureCF(weights, components)


FAMILIES = {
    "laplace": Laplace,
    "linnik": Linnik,
    "symgamma": SymGammaMixture,
    "symstable": SymStable,
    "degenerate": Degenerate,
}


def make_family(name, **params):
    try:
        cls = FAMILIES[name]
    except KeyError:
        raise UsageError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}") from None
    return cls(**params)


def eval_cf(f, grid):
    """Evaluate ``f`` on ``grid`` (EvalGrid or array)."""
    pts = grid.points if isinstance(grid, EvalGrid) else _as_t(grid)
    if not np.all(np.isfinite(pts)):
        raise UsageError("grid must be finite")
    return f(pts)


def cf_product(f, g):
    return ProductCF(f, g)


@dataclass(frozen=True)
class EmpiricalCF(ScalarCF):
    """Sample mean of exp(itX) on a fixed grid, with cached cos/sin sums."""

    samples: object
    grid: EvalGrid
    cos_sums: np.ndarray = field(repr=False, default=None)
    sin_sums: np.ndarray = field(repr=False, default=None)

    family = "empirical"
    is_real = False

    @property
    def n(self):
        return len(self._x)

    @property
    def _x(self):
        return np.asarray(getattr(self.samples, "values", self.samples), dtype=float)

    @property
    def values(self):
        return (self.cos_sums + 1j * self.sin_sums) / self.n

    def _eval(self, t):
        return _ecf(self._x, t)

    def describe(self):
        return f"empirical(n={self.n})"


def _ecf(x, t, chunk=1 << 22):
    t = np.atleast_1d(t)
    out = np.empty(t.shape, dtype=complex)
    flat_t = t.ravel()
    flat = out.ravel()
    rows = max(1, chunk // max(1, x.size))
    for i in range(0, flat_t.size, rows):
        tt = flat_t[i : i + rows]
        arg = np.multiply.outer(tt, x)
        flat[i : i + rows] = np.cos(arg).sum(axis=1) / x.size + 1j * np.sin(arg).sum(axis=1) / x.size
    return flat.reshape(t.shape)


def empirical_cf(samples, grid):
    """Plain (unsmoothed) empirical characteristic function."""
    x = np.asarray(getattr(samples, "values", samples), dtype=float)
    if x.size == 0:
        raise UsageError("empirical CF of an empty batch")
    if x.size < 2:
        raise UsageError("empirical CF needs at least 2 samples")
    if not isinstance(grid, EvalGrid):
        grid = EvalGrid(grid, "symmetric")
    cs = np.empty(len(grid))
    ss = np.empty(len(grid))
    rows = max(1, (1 << 22) // x.size)
    for i in range(0, len(grid), rows):
        arg = np.multiply.outer(grid.points[i : i + rows], x)
        cs[i : i + rows] = np.cos(arg).sum(axis=1)
        ss[i : i + rows] = np.sin(arg).sum(axis=1)
    # t = 0 contributes exactly n to the cosine sum and 0 to the sine sum
    zero = grid.points == 0.0
    cs[zero] = x.size
    ss[zero] = 0.0
    cs.setflags(write=False)
    ss.setflags(write=False)
    return EmpiricalCF(samples, grid, cs, ss)


def write_curves_csv(curves, descriptor, fh=None):
    """Emit ``curve,t,re,im`` rows, one block per named curve.

    ``curves`` maps a curve name to ``(t, values)``. The first row is a
    comment carrying the family descriptor. Returns the text when ``fh`` is
    None.
    """
    own = fh is None
    fh = io.StringIO() if own else fh
    fh.write(f"# {descriptor}\n")
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["curve", "t", "re", "im"])
    for name, (t, vals) in curves.items():
        vals = np.asarray(vals, dtype=complex)
        for ti, v in zip(np.asarray(t, dtype=float), vals):
            w.writerow([name, repr(float(ti)), repr(float(v.real)), repr(float(v.imag))])
    return fh.getvalue() if own else None
