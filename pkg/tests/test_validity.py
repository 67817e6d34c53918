import numpy as np
import pytest

from rsdlab import pgf_decompose as pgf
from rsdlab.errors import UsageError
from rsdlab.series import coeff_nonneg
from rsdlab.transforms import EvalGrid, laplace, raw_curve
from rsdlab.validity import ValidityReport, bochner_test, complete_monotone_test, no_real_zero_scan

GRID64 = EvalGrid.symmetric(8.0, 64)


def test_bochner_examples():
    r = bochner_test(raw_curve("gaussian"), GRID64)
    assert r.passed and r.evidence["min_eigenvalue"] >= -1e-10
    r = bochner_test(raw_curve("expminus-t4"), GRID64)
    assert r.verdict == "fail" and r.evidence["min_eigenvalue"] < -1e-6
    assert bochner_test(raw_curve("one"), GRID64).passed


def test_bochner_value_mode():
    g = EvalGrid.symmetric(10.0, 129)
    assert bochner_test(laplace()(g.points), g).passed
    r = bochner_test(np.exp(-g.points ** 4), g)
    assert r.verdict == "fail" and r.evidence["dim"] == 65
    with pytest.raises(UsageError):
        bochner_test(np.ones(64), GRID64)


def test_bochner_needs_uniform_grid():
    with pytest.raises(UsageError):
        bochner_test(laplace(), EvalGrid(np.array([-3.0, -1.0, 0.0, 1.0, 3.0])))


def test_bochner_checks_normalisation():
    half = raw_curve("gaussian")
    r = bochner_test(lambda t: 0.5 * half(t), GRID64)
    assert r.verdict == "fail"


@pytest.mark.parametrize("a,b", [("gaussian", "one"), ("gaussian", "gaussian")])
def test_bochner_closed_under_products(a, b):
    f, g = raw_curve(a), raw_curve(b)
    assert bochner_test(f, GRID64).passed and bochner_test(g, GRID64).passed
    assert bochner_test(lambda t: f(t) * g(t), GRID64).passed
    assert bochner_test(lambda t: f(t) * laplace(2.0)(t), GRID64).passed


@pytest.mark.parametrize("n", [33, 65, 129])
def test_refinement_keeps_negative_control_failing(n):
    g = EvalGrid.symmetric(8.0, n)
    assert bochner_test(raw_curve("expminus-t4"), g).verdict == "fail"
    g2 = EvalGrid.symmetric(8.0, 2 * n - 1)
    assert bochner_test(raw_curve("expminus-t4"), g2).verdict == "fail"


def _lattice_cf(P):
    return lambda t: P.fn(np.exp(1j * np.asarray(t)))


@pytest.mark.parametrize("P", [pgf.geometric(0.4), pgf.poisson(2.0), pgf.thin(pgf.geometric(0.3), 0.5)],
                         ids=["geometric", "poisson", "thinned"])
def test_pgf_and_bochner_agree(P):
    g = EvalGrid.symmetric(np.pi * 40 / 41, 81)
    assert coeff_nonneg(P.series(200)).passed
    assert bochner_test(_lattice_cf(P), g).passed


def test_pgf_and_bochner_agree_on_negative():
    bad = pgf.PGFSeries(lambda s: 2 * s - s * s, None, "2s-s^2")
    from rsdlab.series import from_coeffs

    assert not coeff_nonneg(from_coeffs([0, 2, -1])).passed
    g = EvalGrid.symmetric(np.pi * 40 / 41, 81)
    assert bochner_test(_lattice_cf(bad), g).verdict == "fail"


def test_no_real_zero_examples():
    g = EvalGrid.symmetric(50.0, 1001)
    assert no_real_zero_scan(laplace()(g.points), g).passed
    g = EvalGrid.symmetric(2.0, 401)
    r = no_real_zero_scan(raw_curve("triangular")(g.points), g)
    assert r.verdict == "fail" and abs(r.evidence["t"]) >= 1
    zeros = np.abs(g.points) >= 1
    assert r.evidence["count"] == zeros.sum()
    assert no_real_zero_scan(np.ones(5), np.arange(5.0)).passed


def test_cm_examples():
    assert complete_monotone_test(lambda s: 1 / (1 + s)).passed
    c = 0.5
    assert complete_monotone_test(lambda s: (1 + c * s) / (1 + s)).passed
    r = complete_monotone_test(lambda s: np.sin(s) + 2)
    assert r.verdict == "fail"
    assert 2 in r.evidence["violating_orders"]
    r10 = complete_monotone_test(lambda s: np.sin(s) + 2, s_max=10.0)
    assert 2 in r10.evidence["violating_orders"]


def test_cm_rejects_increasing():
    r = complete_monotone_test(lambda s: 1 - np.exp(-s))
    assert r.evidence["first_violation_order"] == 1


def test_report_requires_evidence_on_fail():
    with pytest.raises(UsageError):
        ValidityReport("fail", "x")
    with pytest.raises(UsageError):
        ValidityReport("maybe")
    d = ValidityReport("pass", "x", {"v": np.float64(1.0)}).to_dict()
    assert type(d["evidence"]["v"]) is float
