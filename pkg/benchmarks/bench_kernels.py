"""Compare the numba kernels with their numpy twins.

    python3 benchmarks/bench_kernels.py [--repeat 5]

Both variants are imported directly, so the STEINSAHI_NUMBA flag does not
matter here.  Results are checked for agreement before timing.
"""
import argparse
import math
import time

import numpy as np

from steinsahi import _kernels
from steinsahi.quadrature import tanh_sinh_nodes
from steinsahi.signatures import signature_array


def best_of(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    labels = signature_array(5, 6)
    sigma, tau = -2.375, 0.625
    rng = np.random.default_rng(0)
    mats = rng.standard_normal((20000, 6, 6))
    x, w, da, db = tanh_sinh_nodes(0.0, 2 * math.pi, 5)
    fw = (w * np.sin(0.5 * np.minimum(da, db)) ** -0.4).astype(complex)

    cases = [
        ("coefficient_body  (%d signatures, n=5)" % len(labels),
         lambda: _kernels.coefficient_body_numba(labels, sigma, tau),
         lambda: _kernels.coefficient_body_numpy(labels, sigma, tau)),
        ("batch_det         (20000 x 6x6)",
         lambda: _kernels.batch_det_numba(mats),
         lambda: _kernels.batch_det_numpy(mats)),
        ("torus_sum2        (%d^2 nodes)" % len(x),
         lambda: _kernels.torus_sum2_numba(x, fw, 3, -2),
         lambda: _kernels.torus_sum2_numpy(x, fw, 3, -2)),
    ]
    print(f"{'kernel':45s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'ratio':>7s}")
    for name, nb, npy in cases:
        a, b = nb(), npy()  # also triggers compilation
        if isinstance(a, tuple):
            assert np.array_equal(a[0], b[0]) and np.allclose(a[1], b[1], rtol=1e-12)
        else:
            assert np.allclose(a, b, rtol=1e-9, atol=1e-12)
        t_nb, t_np = best_of(nb, args.repeat), best_of(npy, args.repeat)
        print(f"{name:45s} {1e3 * t_nb:11.3f} {1e3 * t_np:11.3f} {t_np / t_nb:7.2f}")


if __name__ == "__main__":
    main()
