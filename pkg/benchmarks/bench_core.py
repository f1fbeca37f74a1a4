"""Time the compiled kernel core against the numpy fallback.

Large batches are bound by libm exp in both backends; the compiled core pays
off on the small batches produced by scalar evaluations.

Usage: python3 benchmarks/bench_core.py [--repeat N]
"""

import argparse
import timeit

import numpy as np

from fracschrodinger import _core_py
from fracschrodinger.mittag_leffler import MLOrder, _pole_geometry, _taylor_coeffs, _taylor_nmax

try:
    from fracschrodinger import _core
except ImportError:
    _core = None


def cases():
    rng = np.random.default_rng(0)
    z = rng.uniform(0.1, 20, 4096) * np.exp(1j * rng.uniform(-np.pi, np.pi, 4096))
    order = MLOrder(0.8, 1.0)
    lc, lr, mono = _taylor_coeffs(order.alpha, order.beta, _taylor_nmax(order, 100000))
    yield "taylor_batch (4096 points)", "taylor_batch", (z, lc, lr, mono, 0.0, 1e-14)
    # scalar calls: per-call overhead dominates the numpy path
    yield "taylor_batch (1 point)", "taylor_batch", (z[:1], lc, lr, mono, 0.0, 1e-14)

    zr = rng.uniform(1, 40, 256) * np.exp(1j * rng.uniform(-np.pi, np.pi, 256))
    _, theta, _ = _pole_geometry(0.7, zr)
    log_r = np.linspace(-6, 4, 257)
    weight = rng.uniform(0.1, 1.0, 257)
    yield "ray_level (256 x 257)", "ray_level", (zr, theta, 0.7, 0.7 - 1.1, log_r, weight)
    yield "ray_level (1 x 257)", "ray_level", (zr[:1], theta[:1], 0.7, 0.7 - 1.1, log_r, weight)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    print(f"{'kernel':30s} {'python [ms]':>12s} {'compiled [ms]':>14s} {'speedup':>8s}")
    for label, name, call_args in cases():
        py = min(timeit.repeat(lambda: getattr(_core_py, name)(*call_args), number=20, repeat=args.repeat)) / 20
        if _core is None:
            print(f"{label:30s} {py * 1e3:12.2f} {'n/a':>14s} {'n/a':>8s}")
            continue
        cc = min(timeit.repeat(lambda: getattr(_core, name)(*call_args), number=20, repeat=args.repeat)) / 20
        print(f"{label:30s} {py * 1e3:12.2f} {cc * 1e3:14.2f} {py / cc:8.1f}x")


if __name__ == "__main__":
    main()
