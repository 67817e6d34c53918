"""Membership tests: is a candidate a CF, free of real zeros, completely monotone?

A finite grid cannot prove positive definiteness, so a ``fail`` verdict is
the sound one: it always carries the concrete witness (negative eigenvalue,
first bad coefficient, sign violation). ``pass`` records the resolution it
was obtained at.
"""
from dataclasses import asdict, dataclass, field
from math import comb

import numpy as np

from .errors import UsageError

VERDICTS = ("pass", "fail", "inconclusive")
PSD_TOL_PER_DIM = 1e-8
ZERO_TOL = 1e-12
CM_TOL = 1e-8


@dataclass(frozen=True)
class ValidityReport:
    verdict: str
    test: str = ""
    evidence: dict = field(default_factory=dict)
    resolution: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise UsageError(f"bad verdict {self.verdict!r}")
        if self.verdict == "fail" and not self.evidence:
            raise UsageError("a fail verdict must carry evidence")

    @property
    def passed(self):
        return self.verdict == "pass"

    def to_dict(self):
        return _jsonable(asdict(self))


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, np.generic):
        return x.item()
    if isinstance(x, np.ndarray):
        return [_jsonable(v) for v in x.tolist()]
    return x


def _grid_points(grid):
    return np.asarray(getattr(grid, "points", grid), dtype=float)


def _uniform_step(t):
    if t.size < 2:
        raise UsageError("Bochner test needs at least 2 grid points")
    h = (t[-1] - t[0]) / (t.size - 1)
    if not np.allclose(np.diff(t), h, rtol=1e-9, atol=0):
        raise UsageError("Bochner test needs an equally spaced grid")
    return h


def _toeplitz_min_eig(lag_values):
    """Smallest eigenvalue of M_jk = v[j - k], v indexed by lag -(m)..m."""
    m = (lag_values.size - 1) // 2
    idx = np.arange(m + 1)
    lag = idx[:, None] - idx[None, :] + m
    mat = lag_values[lag]
    return float(np.linalg.eigvalsh(mat)[0]), m + 1


def _psd_check(lag_values, tol):
    m = (lag_values.size - 1) // 2
    f0 = lag_values[m]
    herm_gap = float(np.max(np.abs(lag_values[::-1] - np.conj(lag_values))))
    lam_min, dim = _toeplitz_min_eig(lag_values)
    thr = tol if tol is not None else PSD_TOL_PER_DIM * dim
    ok = lam_min >= -thr and abs(f0 - 1.0) <= 1e-10 and herm_gap <= 1e-10
    return ok, {
        "min_eigenvalue": lam_min,
        "dim": dim,
        "threshold": -thr,
        "f0": [float(np.real(f0)), float(np.imag(f0))],
        "hermitian_gap": herm_gap,
    }


def bochner_test(f, grid, tol=None, refine=True):
    """Positive-semidefiniteness of the matrix f(t_j - t_k).

    ``f`` is either a callable CF, in which case the matrix is built on all
    ``len(grid)`` points by evaluating ``f`` at the lags, or an array of values
    on an odd, symmetric, equally spaced grid, in which case only the
    nonnegative half is used so that every lag lands on the grid.

    Default tolerance is ``1e-8 * dim``. With a callable and ``refine=True``
    a pass is re-checked at half the spacing; a pass that does not survive
    refinement is reported ``inconclusive``.
    """
    t = _grid_points(grid)
    h = _uniform_step(t)
    if callable(f):
        n = t.size
        lags = np.arange(-(n - 1), n) * h
        vals = np.asarray(f(lags), dtype=complex)
    else:
        vals = np.asarray(f, dtype=complex)
        if vals.shape != t.shape:
            raise UsageError("values and grid differ in length")
        if t.size % 2 == 0 or not np.allclose(t, -t[::-1], rtol=0, atol=1e-12 * max(1.0, abs(t[-1]))):
            raise UsageError("value-mode Bochner test needs an odd symmetric grid")
    ok, ev = _psd_check(vals, tol)
    res = {"points": int(t.size), "spacing": float(h), "extent": float(t[-1])}
    if not ok:
        return ValidityReport("fail", "bochner", ev, res)
    if callable(f) and refine:
        fine = np.linspace(t[0], t[-1], 2 * t.size - 1)
        n = fine.size
        fine_ok, fine_ev = _psd_check(
            np.asarray(f(np.arange(-(n - 1), n) * (h / 2)), dtype=complex), tol)
        res["refined_points"] = int(n)
        ev["refined_min_eigenvalue"] = fine_ev["min_eigenvalue"]
        if not fine_ok:
            return ValidityReport("inconclusive", "bochner", ev, res)
    return ValidityReport("pass", "bochner", ev, res)


def no_real_zero_scan(values, grid, tol=ZERO_TOL):
    """Fail iff |f| < tol somewhere on the grid."""
    t = _grid_points(grid)
    v = np.abs(np.asarray(values))
    bad = np.flatnonzero(v < tol)
    res = {"points": int(t.size), "tol": tol}
    if bad.size:
        return ValidityReport("fail", "no-real-zero",
                              {"t": float(t[bad[0]]), "abs_value": float(v[bad[0]]),
                               "count": int(bad.size)}, res)
    return ValidityReport("pass", "no-real-zero", {"min_abs": float(v.min())}, res)


def complete_monotone_test(g, max_order=8, s_min=0.01, s_max=100.0, n_points=64,
                           rel_step=0.05, tol=CM_TOL):
    """Sign test (-1)^n Delta_h^n g(s) >= 0 for n = 1..max_order.

    Points are log-spaced on [s_min, s_max]; the step at each point is
    ``rel_step * s``. A violation must exceed ``tol`` times the absolute sum
    of the terms entering the difference.
    """
    s = np.geomspace(s_min, s_max, n_points)
    h = rel_step * s
    j = np.arange(max_order + 1)
    gv = np.asarray(g(s[:, None] + j[None, :] * h[:, None]), dtype=float)
    violations = []
    for n in range(1, max_order + 1):
        w = np.array([(-1) ** (n - i) * comb(n, i) for i in range(n + 1)], dtype=float)
        diff = gv[:, : n + 1] @ w
        scale = np.abs(gv[:, : n + 1]) @ np.abs(w)
        signed = (-1) ** n * diff
        bad = np.flatnonzero(signed < -tol * scale)
        if bad.size:
            violations.append({"order": n, "s": float(s[bad[0]]), "signed_difference": float(signed[bad[0]]),
                               "count": int(bad.size)})
    res = {"max_order": max_order, "s_min": s_min, "s_max": s_max, "points": n_points,
           "rel_step": rel_step, "tol": tol}
    if violations:
        first = violations[0]
        return ValidityReport("fail", "complete-monotone",
                              {"first_violation_order": first["order"], "s": first["s"],
                               "signed_difference": first["signed_difference"],
                               "violating_orders": [v["order"] for v in violations]}, res)
    return ValidityReport("pass", "complete-monotone", {"orders_checked": max_order}, res)
