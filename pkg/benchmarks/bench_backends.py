"""Benchmark the numba kernels against the pure-numpy fallbacks.

Times the raw panel kernels on synthetic workloads, one full transform,
and a small envelope scan slice.  The backend actually selected at
import time is reported; both kernel implementations are imported
explicitly so the comparison does not depend on LPFOURIER_PURE_NUMPY.

Usage: python benchmarks/bench_backends.py [--panels 200000] [--repeats 5]
"""

import argparse
import time

import numpy as np

from lpfourier import _kernels, decay
from lpfourier.oscquad import QuadConfig


def _time(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_kernels(n_panels, repeats):
    breaks = np.linspace(0.0, 1.0, n_panels + 1)
    lefts, rights = breaks[:-1], breaks[1:]
    cases = [("lp_cos_sin", "lp_cos_sin_panel_sums", (1.5, 700.0, 1400.0))]
    cases.append(("lp_phase_sin", "lp_phase_sin_panel_sums", (1.5, 1500.0, 0.53, 0.85, 1.0)))
    rows = []
    for label, stem, extra in cases:
        np_fn = getattr(_kernels, f"{stem}_numpy")
        t_np = _time(lambda: np_fn(lefts, rights, *extra), repeats)
        row = {"kernel": label, "panels": n_panels, "numpy_s": t_np}
        if _kernels.NUMBA_AVAILABLE:
            nb_fn = getattr(_kernels, f"{stem}_numba")
            nb_fn(lefts[:2], rights[:2], *extra)  # compile outside the timer
            t_nb = _time(lambda: nb_fn(lefts, rights, *extra), repeats)
            row["numba_s"] = t_nb
            row["speedup"] = t_np / t_nb
        rows.append(row)
    return rows


def bench_transform(repeats):
    # one high-frequency transform via whichever backend is active
    from lpfourier import fourier

    omega = (900.0, 1200.0)
    fourier.chi_hat_lp(1.5, omega)  # warm caches
    t = _time(lambda: fourier.chi_hat_lp(1.5, omega), repeats)
    return {"task": "chi_hat_lp(1.5, |omega|=1500)", "seconds": t}


def bench_scan_slice(repeats):
    r_grid = np.geomspace(5.0, 400.0, 40)
    theta_grid = np.linspace(np.pi / 4, np.pi / 2, 9)
    cfg = QuadConfig()
    decay.envelope_scan(1.5, r_grid, theta_grid, cfg)  # warm
    t = _time(lambda: decay.envelope_scan(1.5, r_grid, theta_grid, cfg), max(1, repeats // 2))
    return {"task": "envelope slice (40 x 9 + witnesses)", "seconds": t}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--panels", type=int, default=200_000)
    ap.add_argument("--repeats", type=int, default=5)
    args = ap.parse_args()

    print(f"active backend: {_kernels.backend_name()} (numba available: {_kernels.NUMBA_AVAILABLE})")
    print()
    print(f"{'kernel':<14} {'panels':>8} {'numpy':>10} {'numba':>10} {'speedup':>8}")
    for row in bench_kernels(args.panels, args.repeats):
        numba_s = row.get("numba_s")
        print(
            f"{row['kernel']:<14} {row['panels']:>8} {row['numpy_s'] * 1e3:>8.1f}ms "
            + (f"{numba_s * 1e3:>8.1f}ms {row['speedup']:>7.1f}x" if numba_s else f"{'n/a':>10}")
        )
    print()
    for bench in (bench_transform, bench_scan_slice):
        row = bench(args.repeats)
        print(f"{row['task']:<40} {row['seconds'] * 1e3:>8.1f}ms   [{_kernels.backend_name()}]")


if __name__ == "__main__":
    main()
