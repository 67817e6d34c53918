"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import timeit

import numpy as np

from rsdlab import _purepy

try:
    from rsdlab import _kernels
except ImportError:
    _kernels = None


def cases(rng):
    a = rng.standard_normal(512)
    b = np.r_[1.0, rng.standard_normal(511) * 0.1]
    small = np.r_[0.0, rng.standard_normal(511) * 0.01]
    counts = rng.integers(1, 20, size=200_000).astype(np.int64)
    vals = rng.standard_normal(int(counts.sum()))
    xa = np.sort(rng.standard_normal(200_000))
    xb = np.sort(rng.standard_normal(200_000))
    return {
        "trunc_mul(512)": lambda m: m.trunc_mul(a, b, 512),
        "trunc_div(512)": lambda m: m.trunc_div(a, b, 512),
        "trunc_exp(512)": lambda m: m.trunc_exp(small, 512),
        "trunc_log(512)": lambda m: m.trunc_log(b, 512),
        "affine_compose(512)": lambda m: m.affine_compose(a, 0.3, 0.7, 512),
        "segment_sums(2e5 segs)": lambda m: m.segment_sums(vals, counts),
        "ks_statistic(2e5)": lambda m: m.ks_statistic(xa, xb),
    }


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    rng = np.random.default_rng(0)
    backends = [("python", _purepy)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'kernel':<24}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _kernels else ""))
    for label, fn in cases(rng).items():
        times = []
        for _, mod in backends:
            number = 3
            t = min(timeit.repeat(lambda: fn(mod), number=number, repeat=args.repeat)) / number
            times.append(t)
        row = f"{label:<24}" + "".join(f"{t * 1e3:>10.3f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if _kernels is None:
        print("compiled extension not built; only the fallback was timed")


if __name__ == "__main__":
    main()
