import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import THETAS
from rsdlab.cf_decompose import (composite_values, n_component, nid_construct, nid_inversion_residual,
                                 nstable_factorization, phi_rsd_component, rsd_composite, sd_component)
from rsdlab.errors import DomainError, RangeError, UnsupportedFamilyError, ZeroDivisorError
from rsdlab.poincare import LTFamily
from rsdlab.transforms import EvalGrid, default_grid, degenerate, laplace, linnik, raw_curve, symgamma, symstable

T2 = np.array([2.0])


def test_sd_component_examples():
    f = laplace(1.0)
    np.testing.assert_array_equal(sd_component(f, 1.0, default_grid()), np.ones(129))
    assert sd_component(f, 0.5, T2)[0] == pytest.approx(0.4, abs=1e-16)
    assert sd_component(f, 0.5, np.array([0.0]))[0] == 1.0


@pytest.mark.parametrize("c", THETAS)
def test_laplace_sd_component_is_mixture(c):
    t = default_grid().points
    np.testing.assert_allclose(sd_component(laplace(1.0), c, t), c * c + (1 - c * c) / (1 + t * t),
                               rtol=0, atol=1e-14)


def test_sd_component_zero_divisor():
    with pytest.raises(ZeroDivisorError) as err:
        sd_component(raw_curve("triangular"), 0.5, np.linspace(-4, 4, 9))
    assert err.value.t == -4.0


@pytest.mark.parametrize("c", [0.0, -0.1, 1.01])
def test_sd_component_c_domain(c):
    with pytest.raises(DomainError):
        sd_component(laplace(), c, T2)


def test_n_component_examples(phi1, phi2):
    f = laplace(1.0)
    np.testing.assert_array_equal(n_component(f, phi1, 0.0, default_grid()), np.ones(129))
    assert n_component(f, phi1, 0.5, T2)[0].real == pytest.approx(1 / 3, rel=1e-15)
    g = symgamma(2)
    assert n_component(g, phi2, 0.25, T2)[0].real == pytest.approx(2 ** -0.5, rel=1e-15)


@pytest.mark.parametrize("method", ["numeric", "closed"])
def test_n_component_paths_agree(phi1, phi2, method):
    t = default_grid().points
    for f, phi in ((laplace(1.0), phi1), (laplace(2.0), phi1), (symgamma(2), phi2), (linnik(1.2), phi1)):
        for th in THETAS:
            v = n_component(f, phi, th, t, method)
            expect = phi(th * phi.inverse(f(t).real))
            np.testing.assert_allclose(v, expect, rtol=1e-12)


def test_n_component_range_errors(phi1):
    with pytest.raises(RangeError) as err:
        n_component(raw_curve("triangular"), phi1, 0.5, np.array([0.0, 0.5, 1.5]))
    assert err.value.at == 1.5


def test_n_component_closed_needs_representation(phi2):
    with pytest.raises(UnsupportedFamilyError):
        n_component(laplace(), phi2, 0.5, T2, method="closed")


def test_composite_examples(phi1):
    f = laplace(1.0)
    t = default_grid().points
    r = rsd_composite(f, phi1, 1.0, 0.5, validate=False)
    np.testing.assert_allclose(r.curves["f_c_theta"], 1 / (1 + 0.5 * t * t), rtol=1e-15)
    r = rsd_composite(f, phi1, 0.5, 0.0, validate=False)
    np.testing.assert_allclose(r.curves["f_c_theta"], (1 + 0.25 * t * t) / (1 + t * t), rtol=1e-15)
    v = composite_values(f, phi1, 0.5, 0.5, T2)[0].real
    assert v == pytest.approx(0.4 / 1.5, rel=1e-15)


@pytest.mark.parametrize("theta", [0.0, 0.3, 0.7])
def test_degenerations_bitwise(phi1, phi2, theta):
    grid = default_grid()
    for f, phi in ((laplace(1.0), phi1), (symgamma(2), phi2), (linnik(0.8), phi1)):
        r1 = rsd_composite(f, phi, 1.0, theta, grid, validate=False)
        np.testing.assert_array_equal(r1.curves["f_c_theta"], n_component(f, phi, theta, grid))
        r0 = rsd_composite(f, phi, 0.2 + theta, 0.0, grid, validate=False)
        np.testing.assert_array_equal(r0.curves["f_c_theta"], sd_component(f, 0.2 + theta, grid))


@settings(max_examples=40, deadline=None)
@given(st.floats(0.05, 1.0), st.floats(0.0, 0.95))
def test_product_identity(c, theta):
    f, phi = laplace(1.0), LTFamily.from_k(1)
    grid = default_grid()
    r = rsd_composite(f, phi, c, theta, grid, validate=False)
    expect = sd_component(f, c, grid) * n_component(f, phi, theta, c * grid.points)
    np.testing.assert_allclose(r.curves["f_c_theta"], expect, rtol=0, atol=1e-14)


def test_theta_limit_monotone(phi1):
    f = laplace(1.0)
    t = np.array([0.5, 2.0, 7.0])
    gaps = [np.abs(1 - n_component(f, phi1, th, t)) for th in (0.1, 0.01, 0.001)]
    assert np.all(gaps[0] > gaps[1]) and np.all(gaps[1] > gaps[2])
    np.testing.assert_allclose(gaps[2], 0.001 * t * t / (1 + 0.001 * t * t), rtol=1e-12)


def test_left_neighbourhood_agreement(phi1, phi2):
    grid = default_grid()
    for f in (laplace(1.0), symgamma(2), linnik(1.5)):
        near = {rsd_composite(f, phi1, c, 0.0, grid).validity["f_c"]["bochner"].verdict for c in (0.9, 0.95, 0.99)}
        far = {rsd_composite(f, phi1, c, 0.0, grid).validity["f_c"]["bochner"].verdict for c in THETAS}
        assert near == far == {"pass"}


@pytest.mark.parametrize("c", [0.1, 0.5, 0.9])
@pytest.mark.parametrize("theta", [0.1, 0.5, 0.9])
def test_laplace_bundle_valid(phi1, c, theta):
    r = rsd_composite(laplace(1.0), phi1, c, theta)
    assert r.passed
    d = r.to_dict()
    assert set(d["validity"]) == {"f", "f_c", "f_theta", "f_c_theta"}


def test_report_csv(phi1):
    r = rsd_composite(laplace(1.0), phi1, 0.5, 0.5, validate=False)
    text = r.to_csv()
    assert text.startswith("# laplace(b=1)")
    assert text.count("\n") == 2 + 4 * 129


def test_nid_construct_examples(phi1, phi2):
    np.testing.assert_array_equal(nid_construct(phi1, degenerate(0.0))(default_grid().points), np.ones(129))
    assert nid_construct(phi1, symstable(1.0))(np.array([3.0]))[0].real == pytest.approx(0.25, rel=1e-15)
    v = nid_construct(phi2, symstable(2.0))(np.array([1.0]))[0].real
    assert v == pytest.approx(2 ** -0.5, rel=1e-15)


def test_nid_construct_matches_linnik(phi1):
    t = default_grid().points
    np.testing.assert_allclose(nid_construct(phi1, symstable(0.8, 1.3))(t), linnik(0.8, 1.3)(t), rtol=1e-14)


def test_nid_construct_rejects_nonpositive_h(phi1):
    with pytest.raises(DomainError):
        nid_construct(phi1, raw_curve("triangular"), np.array([0.0, 2.0]))


@pytest.mark.parametrize("theta", THETAS)
def test_inversion_roundtrip(phi1, phi2, theta):
    grid = default_grid()
    assert nid_inversion_residual(laplace(1.0), phi1, theta, grid) < 1e-12
    assert nid_inversion_residual(symgamma(2), phi2, theta, grid) < 1e-10
    assert nid_inversion_residual(laplace(1.0), phi1, theta, np.array([0.0])) == 0.0


def test_nstable_examples(phi1):
    grid = default_grid()
    r = nstable_factorization(phi1, 1.0, 1.0, 1.0, grid)
    assert r.passed and r.residual == 0.0
    r = nstable_factorization(phi1, 1.0, 1.0, 0.5, grid)
    assert r.passed and r.residual <= 1e-14
    assert phi1(2.0) == pytest.approx(phi1(1.0) * (1 + 0.5 * 2) / (1 + 2), rel=1e-15)


def test_nstable_reports_non_sd_phi():
    class Wobbly:
        alpha = 1.0

        def __call__(self, s):
            return (np.sin(np.asarray(s)) + 2) / 2 * np.exp(-np.asarray(s))

        def describe(self):
            return "wobbly"

    r = nstable_factorization(Wobbly(), 1.0, 1.0, 0.5, default_grid())
    assert not r.passed
    assert r.message.startswith("phi not SD at order ")


def test_nstable_domain(phi1):
    with pytest.raises(DomainError):
        nstable_factorization(phi1, 2.5, 1.0, 0.5, default_grid())
    with pytest.raises(DomainError):
        nstable_factorization(phi1, 1.0, 0.0, 0.5, default_grid())


def test_phi_rsd_mirror_is_gated(phi1):
    with pytest.raises(UnsupportedFamilyError):
        phi_rsd_component(laplace(), phi1, 0.5, T2)
    v = phi_rsd_component(laplace(), phi1, 0.25, T2, experimental=True)
    assert v[0].real == pytest.approx(1 - 0.25 * 4)


def test_uneven_grid_rejected_by_validation(phi1):
    from rsdlab.errors import UsageError

    g = EvalGrid(np.array([-2.0, -0.5, 0.0, 0.5, 2.0]))
    with pytest.raises(UsageError):
        rsd_composite(laplace(), phi1, 0.5, 0.5, g)
