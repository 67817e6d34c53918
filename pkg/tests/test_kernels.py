import numpy as np
import pytest
import scipy.stats

from rsdlab import _purepy, kernels

try:
    from rsdlab import _kernels
except ImportError:
    _kernels = None

rng = np.random.default_rng(3)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")


def test_trunc_mul_matches_full_convolution(backend):
    a, b = rng.random(30), rng.random(20)
    np.testing.assert_allclose(backend.trunc_mul(a, b, 25), np.convolve(a, b)[:25], rtol=1e-14)


def test_trunc_div_inverts_mul(backend):
    a, b = rng.random(40), rng.random(40) + np.r_[1.0, np.zeros(39)]
    prod = backend.trunc_mul(a, b, 40)
    np.testing.assert_allclose(backend.trunc_div(prod, b, 40), a, rtol=0, atol=1e-12)


def test_exp_log_roundtrip(backend):
    a = np.r_[0.3, 0.1 * rng.random(31)]
    np.testing.assert_allclose(backend.trunc_log(backend.trunc_exp(a, 32), 32), a, atol=1e-14)


def test_affine_compose_binomial(backend):
    # (0.5 + 0.5 s)^2
    np.testing.assert_allclose(backend.affine_compose(np.array([0.0, 0.0, 1.0]), 0.5, 0.5, 3),
                               [0.25, 0.5, 0.25], atol=1e-16)


def test_affine_compose_truncates_output(backend):
    a = rng.random(12)
    full = backend.affine_compose(a, 0.3, 0.7, 12)
    np.testing.assert_allclose(backend.affine_compose(a, 0.3, 0.7, 5), full[:5], rtol=1e-14)


def test_segment_sums(backend):
    v = rng.random(20)
    counts = np.array([1, 4, 0, 15], dtype=np.int64)
    expect = [v[0], v[1:5].sum(), 0.0, v[5:].sum()]
    np.testing.assert_allclose(backend.segment_sums(v, counts), expect, rtol=1e-14)


@pytest.mark.parametrize("ties", [False, True])
def test_ks_statistic_matches_scipy(backend, ties):
    a = rng.normal(size=500)
    b = rng.normal(0.1, 1.0, size=300)
    if ties:
        a, b = np.round(a, 1), np.round(b, 1)
    a, b = np.sort(a), np.sort(b)
    expect = scipy.stats.ks_2samp(a, b).statistic
    assert backend.ks_statistic(a, b) == pytest.approx(expect, abs=1e-15)


@pytest.mark.skipif(_kernels is None, reason="extension not built")
@pytest.mark.parametrize("name", ["trunc_mul", "trunc_div", "trunc_exp", "trunc_log"])
def test_backends_agree(name):
    a = np.r_[1.2, rng.random(63) * 0.2]
    b = np.r_[0.9, rng.random(63) * 0.2]
    args = (a, b, 64) if name in ("trunc_mul", "trunc_div") else (a, 64)
    np.testing.assert_allclose(getattr(_kernels, name)(*args), getattr(_purepy, name)(*args),
                               rtol=1e-12, atol=1e-15)
