from fractions import Fraction
from math import factorial

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsdlab import series as ser
from rsdlab.errors import DomainError, UsageError
from rsdlab.series import (TruncSeries, affine, coeff_nonneg, constant, from_coeffs, series_compose,
                           series_div, series_mul, series_real_pow, variable)


def coeffs_strategy(n=12):
    return st.lists(st.floats(-2, 2, allow_nan=False), min_size=n, max_size=n).map(from_coeffs)


def unit_series(n=12):
    """Series with constant term bounded away from zero."""
    return st.tuples(st.floats(0.5, 2.0), st.lists(st.floats(-1, 1), min_size=n - 1, max_size=n - 1)).map(
        lambda x: from_coeffs([x[0], *x[1]]))


def test_geometric_division():
    q = 0.5
    out = series_div(constant(1.0, 5), affine(1.0, -q, 5))
    np.testing.assert_allclose(out.coeffs, [1, 0.5, 0.25, 0.125, 0.0625], rtol=0, atol=1e-16)


def test_multiplicative_identity():
    a = from_coeffs([0.3, -1.2, 4.0, 0.5])
    np.testing.assert_array_equal(series_mul(a, constant(1.0, 4)).coeffs, a.coeffs)


def test_factorization_division():
    out = series_div(from_coeffs([1, 0, -1, 0, 0]), from_coeffs([1, -1, 0, 0, 0]))
    np.testing.assert_allclose(out.coeffs, [1, 1, 0, 0, 0], atol=1e-16)


def test_division_by_zero_constant_term():
    with pytest.raises(DomainError):
        series_div(constant(1.0, 4), variable(4))


def test_compose_affine_square():
    c = 0.5
    out = series_compose(from_coeffs([0, 0, 1]), affine(1 - c, c, 3), order=3)
    np.testing.assert_allclose(out.coeffs, [0.25, 0.5, 0.25], atol=1e-16)


def test_compose_with_identity():
    a = from_coeffs([0.1, 0.2, 0.3, 0.4])
    np.testing.assert_allclose(series_compose(a, variable(4)).coeffs, a.coeffs, atol=1e-16)


def test_compose_geometric_thinning():
    # q/(1-(1-q)s) at 1-c+cs is geometric with q' = q/(q+(1-q)c); expand far enough
    # that the dropped tail is below double precision
    q, c, n = 0.5, 0.5, 20
    geo = series_div(constant(q, 200), affine(1.0, -(1 - q), 200))
    out = series_compose(geo, affine(1 - c, c), order=n)
    qp = q / (q + (1 - q) * c)
    assert qp == pytest.approx(2 / 3)
    np.testing.assert_allclose(out.coeffs, qp * (1 - qp) ** np.arange(n), rtol=1e-13)


def test_compose_center_mismatch():
    with pytest.raises(UsageError, match="center mismatch"):
        series_compose(from_coeffs([1, 1, 1]), from_coeffs([0.5, 0.1, 0.2]))


def test_compose_nonaffine_centered_matches_exp_of_series():
    # exp(s + s^2) built two ways
    inner = from_coeffs([0, 1, 1, 0, 0, 0, 0, 0])
    exp_coeffs = from_coeffs([1 / factorial(m) for m in range(8)])
    np.testing.assert_allclose(series_compose(exp_coeffs, inner).coeffs, ser.series_exp(inner).coeffs,
                               rtol=1e-14)


def test_real_pow_geometric():
    out = series_real_pow(affine(1.0, -1.0, 10), -1.0)
    np.testing.assert_allclose(out.coeffs, np.ones(10), rtol=1e-14)


def test_real_pow_binomial_series():
    a = from_coeffs([1.0, 0.0, -0.75, 0, 0, 0, 0, 0, 0, 0])
    out = series_real_pow(a, -0.5)
    np.testing.assert_allclose(out.coeffs[:5], [1, 0, 0.375, 0, 0.2109375], rtol=1e-14, atol=1e-16)

    # exact rational oracle C(-1/2, m) (-3/4)^m at s^{2m}
    def gbinom(r, m):
        v = Fraction(1)
        for i in range(m):
            v *= r - i
        return v / factorial(m)

    exact = np.zeros(10)
    for m in range(5):
        exact[2 * m] = float(gbinom(Fraction(-1, 2), m) * Fraction(-3, 4) ** m)
    np.testing.assert_allclose(out.coeffs, exact, rtol=1e-14, atol=1e-16)
    # independent check: out^2 * a == 1
    np.testing.assert_allclose(series_mul(series_mul(out, out), a).coeffs, np.r_[1.0, np.zeros(9)],
                               atol=1e-14)


def test_real_pow_zero_exponent():
    np.testing.assert_array_equal(series_real_pow(from_coeffs([2.0, 3.0, 1.0]), 0).coeffs, [1, 0, 0])


def test_real_pow_needs_positive_constant():
    with pytest.raises(DomainError):
        series_real_pow(from_coeffs([0.0, 1.0]), 0.5)
    with pytest.raises(DomainError):
        series_real_pow(from_coeffs([-1.0, 1.0]), 0.5)


def test_coeff_nonneg_reports_first_violation():
    r = coeff_nonneg(from_coeffs([0, 2, -1]))
    assert r.verdict == "fail"
    assert r.evidence["index"] == 2 and r.evidence["value"] == -1


def test_coeff_nonneg_geometric_passes():
    geo = series_div(constant(0.3, 200), affine(1.0, -0.7, 200))
    assert coeff_nonneg(geo).passed


def test_coeff_nonneg_dsd_geometric():
    # P_c of q/(1-ps): constant q + pc, then p^m q (1-c)
    q, c = 0.4, 0.6
    p = 1 - q
    geo = series_div(constant(q, 400), affine(1.0, -p, 400))
    thinned = series_compose(geo, affine(1 - c, c), order=200)
    pc = series_div(geo.truncate(200), thinned)
    m = np.arange(1, 200)
    np.testing.assert_allclose(pc.coeffs, np.r_[q + p * c, p ** m * q * (1 - c)], rtol=1e-12, atol=1e-300)
    assert coeff_nonneg(pc, 1e-12).passed


def test_truncseries_is_immutable():
    a = from_coeffs([1.0, 2.0])
    with pytest.raises(ValueError):
        a.coeffs[0] = 5.0


def test_order_of_binary_op_is_min():
    assert (from_coeffs(np.ones(5)) * from_coeffs(np.ones(3))).order == 3


def test_evaluation_horner():
    a = from_coeffs([1.0, 2.0, 3.0])
    assert a(2.0) == pytest.approx(17.0)


@settings(max_examples=60, deadline=None)
@given(coeffs_strategy(), coeffs_strategy(), coeffs_strategy())
def test_ring_axioms(a, b, c):
    lhs = (a * b) * c
    rhs = a * (b * c)
    scale = 1 + np.abs(lhs.coeffs).max()
    np.testing.assert_allclose(lhs.coeffs, rhs.coeffs, rtol=0, atol=1e-15 * scale * 16)
    d1 = a * (b + c)
    d2 = a * b + a * c
    scale = 1 + np.abs(d1.coeffs).max()
    np.testing.assert_allclose(d1.coeffs, d2.coeffs, rtol=0, atol=1e-15 * scale * 16)


@settings(max_examples=60, deadline=None)
@given(coeffs_strategy(), unit_series())
def test_div_undoes_mul(a, b):
    back = series_div(series_mul(a, b), b)
    # error amplification of the recurrence is bounded by 1/|b0| per step
    np.testing.assert_allclose(back.coeffs, a.coeffs, rtol=0, atol=1e-13 * 4 ** a.order)


@settings(max_examples=40, deadline=None)
@given(unit_series(10), st.integers(-3, 4))
def test_integer_power_matches_repeated_multiplication(a, r):
    a = from_coeffs(np.r_[abs(a.coeffs[0]), a.coeffs[1:]])
    expect = constant(1.0, a.order)
    base = a if r >= 0 else series_div(constant(1.0, a.order), a)
    for _ in range(abs(r)):
        expect = expect * base
    got = series_real_pow(a, r)
    scale = 1 + np.abs(expect.coeffs).max()
    np.testing.assert_allclose(got.coeffs, expect.coeffs, rtol=0, atol=1e-13 * scale * 10 ** (a.order / 3))


def test_truncseries_rejects_empty():
    with pytest.raises(UsageError):
        TruncSeries([])
