"""NumPy implementations of the inner loops in :mod:`rsdlab._kernels`.

Used when the compiled extension is unavailable or when ``RSDLAB_PUREPY=1``.
"""
import numpy as np


def trunc_mul(a, b, n):
    out = np.zeros(n)
    prod = np.convolve(a[:n], b[:n])[:n]
    out[: len(prod)] = prod
    return out


def trunc_div(a, b, n):
    a = np.concatenate([a[:n], np.zeros(max(0, n - len(a)))])
    b = np.asarray(b[:n], dtype=float)
    q = np.zeros(n)
    for i in range(n):
        hi = min(i, len(b) - 1)
        # sum_{j=1}^{hi} b_j q_{i-j}
        acc = np.dot(b[1 : hi + 1], q[i - hi : i][::-1]) if hi else 0.0
        q[i] = (a[i] - acc) / b[0]
    return q


def trunc_exp(a, n):
    a = np.concatenate([a[:n], np.zeros(max(0, n - len(a)))])
    ja = np.arange(n) * a
    e = np.zeros(n)
    if n == 0:
        return e
    e[0] = np.exp(a[0])
    for k in range(1, n):
        e[k] = np.dot(ja[1 : k + 1], e[k - 1 :: -1][:k]) / k
    return e


def trunc_log(a, n):
    a = np.concatenate([a[:n], np.zeros(max(0, n - len(a)))])
    out = np.zeros(n)
    if n == 0:
        return out
    out[0] = np.log(a[0])
    jl = np.zeros(n)
    for k in range(1, n):
        acc = np.dot(jl[1:k], a[k - 1 : 0 : -1]) if k > 1 else 0.0
        out[k] = (a[k] - acc / k) / a[0]
        jl[k] = k * out[k]
    return out


def affine_compose(a, shift, scale, n):
    out = np.zeros(n)
    if n == 0 or len(a) == 0:
        return out
    for am in a[::-1]:
        # out <- out * (shift + scale s) + a_m, truncated to n terms
        nxt = shift * out
        nxt[1:] += scale * out[:-1]
        nxt[0] += am
        out = nxt
    return out


def segment_sums(values, counts):
    counts = np.asarray(counts, dtype=np.int64)
    sums = np.zeros(len(counts))
    live = counts > 0
    if live.any():
        starts = np.concatenate([[0], np.cumsum(counts)[:-1]])
        sums[live] = np.add.reduceat(values, starts[live])
    return sums


def ks_statistic(a, b):
    grid = np.concatenate([a, b])
    cdf_a = np.searchsorted(a, grid, side="right") / len(a)
    cdf_b = np.searchsorted(b, grid, side="right") / len(b)
    return float(np.max(np.abs(cdf_a - cdf_b)))
