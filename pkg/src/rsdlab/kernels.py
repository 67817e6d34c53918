"""Hot loops, dispatched to the compiled extension when it is importable.

``BACKEND`` names the active implementation (``"cython"`` or ``"python"``).
Set ``RSDLAB_PUREPY=1`` to force the NumPy fallback.
"""
import os

import numpy as np

from . import _purepy

_compiled = None
if os.environ.get("RSDLAB_PUREPY", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

_impl = _compiled if _compiled is not None else _purepy
BACKEND = "cython" if _compiled is not None else "python"


def _f64(x):
    return np.ascontiguousarray(x, dtype=np.float64)


def trunc_mul(a, b, n):
    return _impl.trunc_mul(_f64(a), _f64(b), int(n))


def trunc_div(a, b, n):
    return _impl.trunc_div(_f64(a), _f64(b), int(n))


def trunc_exp(a, n):
    return _impl.trunc_exp(_f64(a), int(n))


def trunc_log(a, n):
    return _impl.trunc_log(_f64(a), int(n))


def affine_compose(a, shift, scale, n):
    return _impl.affine_compose(_f64(a), float(shift), float(scale), int(n))


def segment_sums(values, counts):
    return _impl.segment_sums(_f64(values), np.ascontiguousarray(counts, dtype=np.int64))


def ks_statistic(a_sorted, b_sorted):
    return float(_impl.ks_statistic(_f64(a_sorted), _f64(b_sorted)))
