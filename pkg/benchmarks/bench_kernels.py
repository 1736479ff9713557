"""
Compare the numba and pure-numpy kernel paths.

Usage::

    python3 benchmarks/bench_kernels.py [--repeat 5] [--end-to-end]

Kernel timings call both implementations in one process. ``--end-to-end``
additionally times a BER point and a secrecy-rate evaluation in fresh
interpreters with and without ``FDADM_DISABLE_NUMBA=1``.
"""

from __future__ import annotations

import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from fdadm import NUMBA_ENABLED, kernels, modulation
from fdadm._psi_tables import grid
from fdadm.ftr_channel import FtrParams, FtrSeries


def _cases():
    rng = np.random.default_rng(1)
    base, log_t, log_r = grid(1.0, 0.8, 0.3, 1.5, 400.0)
    p = rng.integers(0, 200, 20_000).astype(float)
    q = rng.integers(0, 200, 20_000).astype(float)
    series = FtrSeries(FtrParams(2.3, 10.0, 0.5, 0.05))
    y = rng.exponential(1.0, 200_000) / series.scale
    pts = np.ascontiguousarray(modulation.constellation("QAM", 16))
    rx = np.ascontiguousarray(pts[rng.integers(0, 16, 500_000)] + 0.3 * (rng.standard_normal(500_000)
                                                                       + 1j * rng.standard_normal(500_000)))
    a = rng.integers(0, 16, 2_000_000)
    b = rng.integers(0, 16, 2_000_000)
    return {
        "log_psi_pairs (20k pairs)": ("log_psi_pairs", (base, log_t, log_r, p, q)),
        "gamma_mixture (200k points)": ("gamma_mixture", (y, series.log_w)),
        "detect (500k, 16-QAM)": ("detect", (rx, pts)),
        "bit_errors (2M labels)": ("bit_errors", (a, b)),
    }


def _time(fn, args, repeat):
    fn(*args)  # warm-up, includes JIT compilation
    return min(timeit.repeat(lambda: fn(*args), number=1, repeat=repeat))


_E2E = """
import time
from fdadm.config import ExperimentConfig
from fdadm.montecarlo import simulate_ber, secrecy_analytic
cfg = ExperimentConfig.defaults()
t0 = time.perf_counter()
simulate_ber(cfg, "SP", cfg.bob(), 10.0, 100_000, 1, 0, "QAM", 16)
t1 = time.perf_counter()
secrecy_analytic(cfg, "SP", 15.0, 10.0)
t2 = time.perf_counter()
print(f"{t1 - t0:.3f} {t2 - t1:.3f}")
"""


def _end_to_end():
    rows = []
    for label, flag in (("numba", "0"), ("numpy", "1")):
        env = dict(os.environ, FDADM_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", _E2E], env=env, capture_output=True, text=True, check=True)
        ber_t, sr_t = (float(v) for v in out.stdout.split())
        rows.append((label, ber_t, sr_t))
    print("\nend to end (fresh interpreter, first call includes JIT compilation)")
    print(f"{'path':<8}{'BER point [s]':>16}{'secrecy rate [s]':>20}")
    for label, ber_t, sr_t in rows:
        print(f"{label:<8}{ber_t:>16.3f}{sr_t:>20.3f}")


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[1])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--end-to-end", action="store_true")
    args = ap.parse_args(argv)

    print(f"numba enabled: {NUMBA_ENABLED}")
    print(f"{'kernel':<30}{'numpy [ms]':>12}{'numba [ms]':>12}{'speedup':>10}")
    for label, (name, fargs) in _cases().items():
        t_np = _time(getattr(kernels, f"{name}_np"), fargs, args.repeat)
        if NUMBA_ENABLED:
            t_nb = _time(getattr(kernels, f"{name}_nb"), fargs, args.repeat)
            print(f"{label:<30}{1e3 * t_np:>12.2f}{1e3 * t_nb:>12.2f}{t_np / t_nb:>9.1f}x")
        else:
            print(f"{label:<30}{1e3 * t_np:>12.2f}{'n/a':>12}{'':>10}")
    if args.end_to_end:
        _end_to_end()


if __name__ == "__main__":
    main()
