"""Discrete component transforms built on binomial thinning.

For a PGF ``P`` and a Laplace transform ``phi``:

* ``thin(P, c)(s) = P(1 - c + c s)``;
* ``P_c(s) = P(s) / P(1 - c + c s)`` (discrete self-decomposability);
* ``Q_theta(s) = phi(theta * phi^{-1}(P(s)))`` (discrete N-ID component);
* ``Q_theta(s) = 1 - theta * phi^{-1}(P(s))`` (discrete phi-ID component);
* composites ``P_c(s) * Q_theta(1 - c + c s)``.

Every PGF carries a closed-form callable and a builder producing its power
series to any order. Candidates are judged by coefficient nonnegativity.
"""
import csv
import io
from dataclasses import dataclass, field

import numpy as np

from . import series as ser
from .errors import DomainError, RangeError, UsageError
from .poincare import lt_inverse
from .validity import ValidityReport

SUPPORTS = ("starts-at-0", "starts-at-1")
DEFAULT_A = 0.5
NORM_TOL = 1e-9
LIMIT_GAP = 1e-8
# extra terms expanded before an affine composition; the dropped tail is
# below 1e-12 for coefficient decay ratios up to ~0.93
_GUARD = 32


def _guard(n):
    return 2 * n + _GUARD


@dataclass(frozen=True, eq=False)
class PGFSeries:
    """A PGF as a callable plus a power-series builder."""

    fn: object
    builder: object
    name: str = "pgf"
    support: str = "starts-at-0"

    def __post_init__(self):
        if self.support not in SUPPORTS:
            raise UsageError(f"unknown support tag {self.support!r}")

    def __call__(self, s):
        s = np.asarray(s)
        return self.fn(s if np.iscomplexobj(s) else s.astype(float))

    def series(self, order=ser.VALIDITY_ORDER):
        return self.builder(order)

    def describe(self):
        return self.name


def _const_one():
    return PGFSeries(lambda s: np.ones_like(s, dtype=float), lambda n: ser.constant(1.0, n),
                     "one", "starts-at-0")


def geometric(q):
    """Geometric law on {0, 1, ...} with success probability q: q / (1 - (1-q) s)."""
    if not (0.0 < q <= 1.0):
        raise DomainError(f"geometric q must lie in (0, 1], got {q!r}")
    q = float(q)
    return PGFSeries(
        lambda s: q / (1.0 - (1.0 - q) * s),
        lambda n: ser.series_div(ser.constant(q, n), ser.affine(1.0, -(1.0 - q), n)),
        f"geometric(q={q:g})",
    )


def geometric_mean(lam):
    """Geometric law on {0, 1, ...} with mean lam: 1 / (1 + lam (1 - s))."""
    if not lam > 0:
        raise DomainError(f"lam must be positive, got {lam!r}")
    lam = float(lam)
    q = 1.0 / (1.0 + lam)
    return PGFSeries(
        lambda s: 1.0 / (1.0 + lam * (1.0 - s)),
        lambda n: ser.series_div(ser.constant(q, n), ser.affine(1.0, -(1.0 - q), n)),
        f"geometric-mean(lam={lam:g})",
    )


def poisson(lam):
    if not lam >= 0:
        raise DomainError(f"Poisson rate must be nonnegative, got {lam!r}")
    lam = float(lam)
    return PGFSeries(
        lambda s: np.exp(-lam * (1.0 - s)),
        lambda n: ser.series_exp(ser.affine(-lam, lam, n)),
        f"poisson(lam={lam:g})",
    )


def bernoulli(p):
    """1 - p + p s. Not a PGF outside [0, 1]; the builder does not check."""
    p = float(p)
    return PGFSeries(lambda s: 1.0 - p + p * s, lambda n: ser.affine(1.0 - p, p, n), f"bernoulli(p={p:g})")


def from_index_pgf(index):
    """Wrap a poincare.IndexPGF (support starting at 1)."""
    return PGFSeries(index, index.series, index.describe(), "starts-at-1")


def _check_c(c):
    if not (0.0 < c <= 1.0):
        raise DomainError(f"c must lie in (0, 1], got {c!r}")


def thin(P, c):
    """Binomial thinning s -> P(1 - c + c s)."""
    _check_c(c)
    if c == 1.0:
        return P
    c = float(c)
    return PGFSeries(
        lambda s: P(1.0 - c + c * s),
        lambda n: ser.series_compose(P.series(_guard(n)), ser.affine(1.0 - c, c, 2), order=n),
        f"thin({P.name}, c={c:g})",
        "starts-at-0",
    )


def validate_pgf(P, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL):
    """Coefficient nonnegativity, plus P(1) = 1 and total mass <= 1."""
    a = P.series(order)
    rep = ser.coeff_nonneg(a, tol)
    at_one = float(np.real(P(1.0)))
    mass = float(a.coeffs.sum())
    ev = dict(rep.evidence, p_at_1=at_one, coeff_sum=mass)
    if rep.passed and (abs(at_one - 1.0) > NORM_TOL or mass > 1.0 + NORM_TOL):
        ev["normalization"] = "P(1) != 1 or coefficient mass > 1"
        return ValidityReport("fail", "pgf", ev, rep.resolution)
    return ValidityReport(rep.verdict, "pgf", ev, rep.resolution)


@dataclass
class Candidate:
    """A function proposed as a PGF, with its verdict at ``order`` coefficients."""

    pgf: PGFSeries
    verdict: ValidityReport
    order: int = ser.VALIDITY_ORDER

    @property
    def valid(self):
        return self.verdict.passed

    @property
    def series(self):
        return self.pgf.series(self.order)

    def __call__(self, s):
        return self.pgf(s)

    def to_dict(self):
        return {"name": self.pgf.name, "order": self.order, "verdict": self.verdict.to_dict()}


def _candidate(P, order, tol):
    return Candidate(P, validate_pgf(P, order, tol), order)


def dsd_component(P, c, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL):
    """P(s) / P(1 - c + c s)."""
    _check_c(c)
    if c == 1.0:
        return _candidate(_const_one(), order, tol)
    Pt = thin(P, c)
    if Pt(0.0) == 0.0:
        raise DomainError(f"P(1 - c) = 0 for c={c!r}: denominator has zero constant term")
    out = PGFSeries(
        lambda s: P(s) / Pt(s),
        lambda n: ser.series_div(P.series(n), Pt.series(n)),
        f"dsd({P.name}, c={c:g})",
    )
    return _candidate(out, order, tol)


def _check_unit_range(P, grid_n=201):
    s = np.linspace(0.0, 1.0, grid_n)
    v = np.asarray(P(s), dtype=float)
    bad = ~((v > 0) & (v <= 1.0 + 1e-15))
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise RangeError(f"P(s) must lie in (0, 1] on [0, 1]; P({float(s[i])!r}) = {float(v[i])!r}", at=float(s[i]))


def _inv_series(P, phi, n):
    """Series of phi^{-1}(P(s)) = P(s)^(-1/alpha) - 1."""
    return ser.series_real_pow(P.series(n), -1.0 / phi.alpha) - 1.0


def _inv_values(P, phi, s):
    return lt_inverse(phi, np.minimum(np.asarray(P(s), dtype=float), 1.0))


def dnid_component(P, phi, theta, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL):
    """phi(theta * phi^{-1}(P(s)))."""
    if not (0.0 <= theta < 1.0):
        raise DomainError(f"theta must lie in [0, 1), got {theta!r}")
    _check_unit_range(P)
    if theta == 0.0:
        return _candidate(_const_one(), order, tol)
    theta = float(theta)
    a = phi.alpha
    out = PGFSeries(
        lambda s: phi(theta * _inv_values(P, phi, s)),
        lambda n: ser.series_real_pow(_inv_series(P, phi, n) * theta + 1.0, -a),
        f"dnid({P.name}, {phi.describe()}, theta={theta:g})",
    )
    return _candidate(out, order, tol)


def dphi_component(P, phi, theta, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL):
    """1 - theta * phi^{-1}(P(s)); an invalid candidate is reported, not raised."""
    if not (0.0 < theta < 1.0):
        raise DomainError(f"theta must lie in (0, 1), got {theta!r}")
    _check_unit_range(P)
    theta = float(theta)
    out = PGFSeries(
        lambda s: 1.0 - theta * _inv_values(P, phi, s),
        lambda n: 1.0 - _inv_series(P, phi, n) * theta,
        f"dphi({P.name}, {phi.describe()}, theta={theta:g})",
    )
    cand = _candidate(out, order, tol)
    mass0 = float(out(0.0))
    cand.verdict.evidence["mass_at_0"] = mass0
    if mass0 < -tol and cand.verdict.passed:
        cand.verdict = ValidityReport("fail", "pgf", dict(cand.verdict.evidence, index=0, value=mass0),
                                      cand.verdict.resolution)
    return cand


@dataclass
class DiscreteReport:
    kind: str
    c: float
    theta: float
    P: str
    phi: str
    components: dict
    composite: Candidate
    product_gap: float
    extra: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.composite.valid and all(cd.valid for cd in self.components.values())

    def to_dict(self):
        return {
            "kind": self.kind, "c": self.c, "theta": self.theta, "P": self.P, "phi": self.phi,
            "components": {k: v.to_dict() for k, v in self.components.items()},
            "composite": self.composite.to_dict(),
            "product_gap": self.product_gap,
            "passed": self.passed,
            **self.extra,
        }


def _composite(kind, P, phi, c, theta, Pc, Q, order, tol, extra=None):
    Qt = thin(Q.pgf, c)
    prod = PGFSeries(
        lambda s: Pc.pgf(s) * Qt(s),
        lambda n: ser.series_mul(Pc.pgf.series(n), Qt.series(n)),
        f"{kind}({P.name}, {phi.describe()}, c={c:g}, theta={theta:g})",
    )
    comp = _candidate(prod, order, tol)
    s = np.linspace(0.0, 1.0, 101)
    gap = float(np.max(np.abs(comp.series(s) - prod(s))))
    comps = {"P_c": Pc, "Q_theta": Q, "Q_theta_thinned": _candidate(Qt, order, tol)}
    return DiscreteReport(kind, float(c), float(theta), P.name, phi.describe(), comps, comp, gap,
                          extra or {})


def dnrsd_composite(P, phi, c, theta, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL):
    """P_c(s) * Q_theta(1 - c + c s) with the N-ID component."""
    Pc = dsd_component(P, c, order, tol)
    Q = dnid_component(P, phi, theta, order, tol)
    return _composite("dnrsd", P, phi, c, theta, Pc, Q, order, tol)


def theta_bound(P, phi, order=ser.VALIDITY_ORDER, tol=ser.NONNEG_TOL, iters=50):
    """Largest theta in (0, 1) keeping 1 - theta*phi^{-1}(P) a PGF, by bisection.

    Returns 0.0 if no tested theta is valid and 1.0 if all are.
    """
    def ok(th):
        return dphi_component(P, phi, th, order, tol).valid

    lo, hi = 1e-12, 1.0 - 1e-12
    if not ok(lo):
        return 0.0
    if ok(hi):
        return 1.0
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if ok(mid):
            lo = mid
        else:
            hi = mid
    return lo


def dphirsd_composite(P, phi, c, theta, a=DEFAULT_A, b=None, order=ser.VALIDITY_ORDER,
                      tol=ser.NONNEG_TOL):
    """P_c(s) * Q_theta(1 - c + c s) with the phi-ID component, c in (a, 1).

    ``b`` defaults to :func:`theta_bound`; it is reported together with
    whether theta falls inside (0, b).
    """
    if not (0.0 < a < 1.0):
        raise DomainError(f"a must lie in (0, 1), got {a!r}")
    if not (a < c < 1.0):
        raise DomainError(f"c must lie in (a, 1) = ({a:g}, 1), got {c!r}")
    if b is None:
        b = theta_bound(P, phi, order, tol)
    Pc = dsd_component(P, c, order, tol)
    Q = dphi_component(P, phi, theta, order, tol)
    return _composite("dphirsd", P, phi, c, theta, Pc, Q, order, tol,
                      {"a": a, "b": b, "theta_in_region": bool(0.0 < theta < b)})


def dnid_representation_check(P, phi, R, grid=None):
    """sup_s |P(s) - phi(-log R(s))|."""
    s = np.asarray(getattr(grid, "points", grid if grid is not None else np.linspace(0, 1, 101)),
                   dtype=float)
    r = np.asarray(R(s), dtype=float)
    if np.any(~(r > 0)):
        i = int(np.flatnonzero(~(r > 0))[0])
        raise DomainError(f"R must be positive; R({float(s[i])!r}) = {float(r[i])!r}")
    return float(np.max(np.abs(np.asarray(P(s)) - phi(-np.log(r)))))


def bernoulli_family(lam):
    """theta -> 1 - theta*lam*(1 - s)."""
    return lambda theta: bernoulli(theta * lam)


DEFAULT_THETA_SEQ = tuple(2.0 ** -j for j in range(1, 21))


@dataclass
class LimitReport:
    s: np.ndarray
    P: np.ndarray
    exponent: np.ndarray
    R: np.ndarray
    converged: np.ndarray
    steps: np.ndarray
    phi: str

    @property
    def passed(self):
        return bool(self.converged.all())

    @property
    def diverged_at(self):
        return self.s[~self.converged].tolist()

    def P_fn(self, s):
        return np.interp(s, self.s, self.P)

    def R_fn(self, s):
        return np.interp(s, self.s, self.R)

    def to_dict(self):
        return {"phi": self.phi, "s": self.s.tolist(), "P": self.P.tolist(), "R": self.R.tolist(),
                "converged": bool(self.converged.all()), "diverged_at": self.diverged_at,
                "steps": self.steps.tolist(), "passed": self.passed}


def dphi_id_limit(qfamily, phi, theta_seq=DEFAULT_THETA_SEQ, grid=None, gap=LIMIT_GAP):
    """Cauchy limit of phi((1 - Q_theta(s)) / theta) as theta decreases.

    Returns the limit P(s) and R(s) = exp(-lim (1 - Q_theta(s))/theta) per
    grid point. Points whose successive values never come within ``gap``
    are flagged, not raised.
    """
    th = np.asarray(theta_seq, dtype=float)
    if th.size < 2 or np.any(th <= 0) or np.any(np.diff(th) >= 0):
        raise UsageError("theta_seq must be strictly decreasing positive reals, at least two")
    s = np.asarray(getattr(grid, "points", grid if grid is not None else np.linspace(0, 1, 101)),
                   dtype=float)
    m = s.size
    expo = np.full(m, np.nan)
    val = np.full(m, np.nan)
    done = np.zeros(m, dtype=bool)
    steps = np.full(m, th.size, dtype=int)
    prev = None
    for j, t in enumerate(th):
        g = (1.0 - np.asarray(qfamily(t)(s), dtype=float)) / t
        v = phi(g)
        if prev is not None:
            hit = ~done & (np.abs(v - prev) < gap)
            expo[hit], val[hit], steps[hit] = g[hit], v[hit], j + 1
            done |= hit
        prev = v
        if done.all():
            break
    expo[~done], val[~done] = g[~done], v[~done]
    return LimitReport(s, val, expo, np.exp(-expo), done, steps, phi.describe())


def write_coeffs_csv(a, fh=None):
    """``index,coefficient`` rows."""
    own = fh is None
    fh = io.StringIO() if own else fh
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["index", "coefficient"])
    for i, x in enumerate(a.coeffs):
        w.writerow([i, repr(float(x))])
    return fh.getvalue() if own else None
