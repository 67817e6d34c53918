"""Seeded samplers and two-sample tests for the distributional identities.

Each batch owns its own ``PCG64`` stream seeded from a 64-bit integer, so a
(family, params, n, seed) tuple reproduces a batch bit for bit.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import DomainError, UnsupportedFamilyError, UsageError

GENERATOR = "numpy.PCG64"
KS_ALPHA = 0.01
MIN_KS_N = 100


@dataclass(frozen=True, eq=False)
class SampleBatch:
    values: np.ndarray
    seed: int
    family: str
    params: dict = field(default_factory=dict)
    generator: str = GENERATOR

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def n(self):
        return self.values.size

    def __len__(self):
        return self.values.size

    def to_csv(self, fh):
        for x in self.values.tolist():
            fh.write(f"{x!r}\n")


@dataclass
class TestResult:
    statistic: float
    threshold: float
    n: int
    seed: int
    kind: str = "ks"
    derivation: str = ""
    detail: dict = field(default_factory=dict)

    __test__ = False  # not a pytest class

    @property
    def passed(self):
        return bool(self.statistic < self.threshold)

    def to_dict(self):
        return {"kind": self.kind, "statistic": float(self.statistic), "threshold": float(self.threshold),
                "passed": self.passed, "n": int(self.n), "seed": int(self.seed),
                "derivation": self.derivation, "detail": self.detail}


def rng_for(seed):
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(int(seed))))


def child_seeds(seed, count):
    """Independent 63-bit integer seeds derived from ``seed``."""
    state = np.random.SeedSequence(int(seed)).generate_state(count, dtype=np.uint64)
    return [int(x >> np.uint64(1)) for x in state]


def standard_gamma(rng, shape, size):
    """Marsaglia-Tsang squeeze/rejection; shape < 1 boosted by U^(1/shape)."""
    if not shape > 0:
        raise DomainError(f"gamma shape must be positive, got {shape!r}")
    boost = shape < 1.0
    a = shape + 1.0 if boost else shape
    d = a - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(size)
    todo = np.arange(size)
    while todo.size:
        m = todo.size
        x = rng.standard_normal(m)
        v = (1.0 + c * x) ** 3
        u = rng.random(m)
        pos = v > 0
        with np.errstate(divide="ignore", invalid="ignore"):
            accept = pos & (np.log(u) < 0.5 * x * x + d - d * v + d * np.log(np.where(pos, v, 1.0)))
        out[todo[accept]] = d * v[accept]
        todo = todo[~accept]
    if boost:
        out *= rng.random(size) ** (1.0 / shape)
    return out


def _symmetric_stable(rng, alpha, size):
    """Chambers-Mallows-Stuck, symmetric case; CF exp(-|t|^alpha)."""
    v = rng.uniform(-math.pi / 2, math.pi / 2, size)
    w = rng.standard_exponential(size)
    if alpha == 1.0:
        return np.tan(v)
    return (np.sin(alpha * v) / np.cos(v) ** (1.0 / alpha)
            * (np.cos((1.0 - alpha) * v) / w) ** ((1.0 - alpha) / alpha))


def _laplace(rng, n, b=1.0):
    return b * (rng.standard_exponential(n) - rng.standard_exponential(n))


def _geometric(rng, n, theta):
    if not (0.0 < theta <= 1.0):
        raise DomainError(f"geometric theta must lie in (0, 1], got {theta!r}")
    if theta == 1.0:
        return np.ones(n)
    u = 1.0 - rng.random(n)  # (0, 1]
    return 1.0 + np.floor(np.log(u) / math.log1p(-theta))


def _harris(rng, n, k, theta):
    if not (0.0 < theta <= 1.0):
        raise DomainError(f"Harris theta must lie in (0, 1], got {theta!r}")
    k = int(k)
    if k < 1:
        raise DomainError(f"Harris k must be a positive integer, got {k!r}")
    if theta == 1.0:
        return np.ones(n)
    g = standard_gamma(rng, 1.0 / k, n) * ((1.0 - theta) / theta)
    return 1.0 + k * rng.poisson(g).astype(float)


def _symgamma(rng, n, k, b=1.0):
    g = standard_gamma(rng, 1.0 / k, n)
    return b * rng.standard_normal(n) * np.sqrt(2.0 * g)


def _linnik(rng, n, alpha, lam=1.0):
    if not (0 < alpha <= 2):
        raise DomainError(f"Linnik alpha must lie in (0, 2], got {alpha!r}")
    e = rng.standard_exponential(n)
    return (lam * e) ** (1.0 / alpha) * _symmetric_stable(rng, alpha, n)


def _symstable(rng, n, alpha, lam=1.0):
    if not (0 < alpha <= 2):
        raise DomainError(f"stable alpha must lie in (0, 2], got {alpha!r}")
    return lam ** (1.0 / alpha) * _symmetric_stable(rng, alpha, n)


def _sd_laplace(rng, n, c, b=1.0):
    """SD component of Laplace(b): 0 w.p. c^2, Laplace(b) otherwise."""
    if not (0.0 < c <= 1.0):
        raise DomainError(f"c must lie in (0, 1], got {c!r}")
    keep = rng.random(n) >= c * c
    return np.where(keep, _laplace(rng, n, b), 0.0)


def _degenerate(rng, n, a=0.0):
    return np.full(n, float(a))


SAMPLERS = {
    "laplace": _laplace,
    "geometric": _geometric,
    "harris": _harris,
    "symgamma": _symgamma,
    "linnik": _linnik,
    "symstable": _symstable,
    "sd-laplace": _sd_laplace,
    "degenerate": _degenerate,
}


def sample(family, params, n, seed):
    """Draw ``n`` i.i.d. values from a named family."""
    try:
        fn = SAMPLERS[family]
    except KeyError:
        raise UsageError(f"unknown family {family!r}; choose from {sorted(SAMPLERS)}") from None
    n = int(n)
    if n < 1:
        raise UsageError("n must be >= 1")
    params = dict(params or {})
    values = fn(rng_for(seed), n, **params)
    return SampleBatch(values, int(seed), family, params)


def compound_sum(index, family, params, seed):
    """For each index draw N, the sum of N fresh summands."""
    N = np.asarray(getattr(index, "values", index), dtype=float)
    if N.size and (np.any(N < 1) or np.any(N != np.floor(N))):
        raise UsageError("index values must be integers >= 1")
    counts = N.astype(np.int64)
    summands = sample(family, params, max(1, int(counts.sum())), seed).values
    sums = kernels.segment_sums(summands, counts)
    return SampleBatch(sums, int(seed), f"compound({getattr(index, 'family', 'index')}, {family})",
                       {"summand": dict(params or {})})


def ks_critical(alpha, n_a, n_b):
    c = math.sqrt(-0.5 * math.log(alpha / 2.0))
    return c * math.sqrt((n_a + n_b) / (n_a * n_b)), c


def ks_two_sample(a, b, alpha=KS_ALPHA):
    """Two-sample Kolmogorov-Smirnov against the asymptotic critical value."""
    xa = np.sort(np.asarray(getattr(a, "values", a), dtype=float))
    xb = np.sort(np.asarray(getattr(b, "values", b), dtype=float))
    if xa.size < MIN_KS_N or xb.size < MIN_KS_N:
        raise UsageError(f"KS test needs at least {MIN_KS_N} draws per sample")
    d = kernels.ks_statistic(xa, xb)
    thr, c = ks_critical(alpha, xa.size, xb.size)
    seed = getattr(a, "seed", 0)
    return TestResult(d, thr, int(min(xa.size, xb.size)), int(seed), "ks",
                      f"c(alpha)*sqrt((na+nb)/(na*nb)), c({alpha:g})={c:.4f}",
                      {"alpha": alpha, "n_a": int(xa.size), "n_b": int(xb.size)})


def ecf_gap(batch, cf, grid):
    """Sup |empirical CF - cf| on the grid, against the 4/sqrt(n) band."""
    from .transforms import empirical_cf

    e = empirical_cf(batch, grid)
    gap = float(np.max(np.abs(e.values - cf(grid.points))))
    return TestResult(gap, 4.0 / math.sqrt(batch.n), batch.n, batch.seed, "ecf-sup-gap", "4/sqrt(n)",
                      {"family": batch.family})


def compound_geometric_check(theta, n, seed, b=1.0, alpha=KS_ALPHA):
    """Geometric(theta) sum of Laplace(b*sqrt(theta)) vs Laplace(b)."""
    s1, s2, s3 = child_seeds(seed, 3)
    idx = sample("geometric", {"theta": theta}, n, s1)
    lhs = compound_sum(idx, "laplace", {"b": b * math.sqrt(theta)}, s2)
    rhs = sample("laplace", {"b": b}, n, s3)
    res = ks_two_sample(lhs, rhs, alpha)
    res.seed = int(seed)
    res.detail.update(check="compound-geometric", theta=theta, b=b)
    return res


def compound_harris_check(theta, n, seed, k=2, alpha=KS_ALPHA):
    """Harris(k, theta) sum of sqrt(theta)-scaled symgamma(k) vs symgamma(k)."""
    s1, s2, s3 = child_seeds(seed, 3)
    idx = sample("harris", {"k": k, "theta": theta}, n, s1)
    lhs = compound_sum(idx, "symgamma", {"k": k, "b": math.sqrt(theta)}, s2)
    rhs = sample("symgamma", {"k": k, "b": 1.0}, n, s3)
    res = ks_two_sample(lhs, rhs, alpha)
    res.seed = int(seed)
    res.detail.update(check="compound-harris", theta=theta, k=k)
    return res


def sd_identity_check(c, n, seed, b=1.0, alpha=KS_ALPHA):
    """c X' + eps_c vs X for X ~ Laplace(b)."""
    s1, s2, s3 = child_seeds(seed, 3)
    lhs = c * sample("laplace", {"b": b}, n, s1).values + sample("sd-laplace", {"c": c, "b": b}, n, s2).values
    rhs = sample("laplace", {"b": b}, n, s3)
    res = ks_two_sample(SampleBatch(lhs, int(seed), "sd-identity"), rhs, alpha)
    res.detail.update(check="sd", c=c, b=b)
    return res


def convolution_identity_test(report, n, seed, alpha=KS_ALPHA):
    """KS check of c X' + W_{c,theta} =d X + c V_theta.

    Both sides have CF f(t) f_theta(ct). Only the Laplace bundle with the
    geometric index (phi = 1/(1+s)) is sampleable: f_c is the mixture
    0 w.p. c^2 / Laplace(b) otherwise and f_theta is Laplace(b sqrt(theta)).
    """
    f, phi = getattr(report, "f_obj", None), getattr(report, "phi_obj", None)
    if getattr(f, "family", None) != "laplace" or getattr(phi, "k", None) != 1:
        raise UnsupportedFamilyError(
            f"convolution identity is sampleable only for laplace with phi=(1+s)^-1, got {report.family}"
            f" / {report.phi}")
    c, theta, b = report.c, report.theta, f.b
    s = child_seeds(seed, 5)
    xp = sample("laplace", {"b": b}, n, s[0]).values
    eps = sample("sd-laplace", {"c": c, "b": b}, n, s[1]).values
    v = sample("laplace", {"b": b * math.sqrt(theta)}, n, s[2]).values if theta > 0 else np.zeros(n)
    lhs = c * xp + eps + c * v
    x = sample("laplace", {"b": b}, n, s[3]).values
    v2 = sample("laplace", {"b": b * math.sqrt(theta)}, n, s[4]).values if theta > 0 else np.zeros(n)
    rhs = x + c * v2
    res = ks_two_sample(SampleBatch(lhs, int(seed), "lhs"), SampleBatch(rhs, int(seed), "rhs"), alpha)
    res.detail.update(check="convolution", c=c, theta=theta, b=b)
    return res
