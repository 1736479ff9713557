import os
import subprocess
import sys

import numpy as np
import pytest

from fdadm import NUMBA_ENABLED, kernels, modulation
from fdadm._psi_tables import grid
from fdadm.ftr_channel import FtrParams, FtrSeries

needs_numba = pytest.mark.skipif(not NUMBA_ENABLED, reason="numba path disabled")


@pytest.fixture(scope="module")
def data():
    rng = np.random.default_rng(3)
    base, log_t, log_r = grid(1, 0.8, 0.3, 1.5, 50.0)
    p = rng.integers(0, 60, 300).astype(float)
    q = rng.integers(0, 50, 300).astype(float)
    series = FtrSeries(FtrParams(2.3, 10.0, 0.5, 0.05))
    y = np.concatenate([[0.0], rng.exponential(30.0, 2000)])
    pts = np.ascontiguousarray(modulation.constellation("QAM", 16))
    rx = np.ascontiguousarray(pts[rng.integers(0, 16, 5000)] + 0.3 * rng.standard_normal(5000))
    return dict(psi=(base, log_t, log_r, p, q), mix=(y, series.log_w), det=(rx, pts),
                bits=(rng.integers(0, 64, 5000), rng.integers(0, 64, 5000)))


def test_dispatch_matches_flag():
    expected = kernels.detect_nb if NUMBA_ENABLED else kernels.detect_np
    assert kernels.detect is expected


@needs_numba
def test_log_psi_pairs_paths_agree(data):
    a = kernels.log_psi_pairs_nb(*data["psi"])
    b = kernels.log_psi_pairs_np(*data["psi"])
    assert np.allclose(a, b, rtol=0, atol=1e-12)


@needs_numba
def test_gamma_mixture_paths_agree(data):
    pa, ca = kernels.gamma_mixture_nb(*data["mix"])
    pb, cb = kernels.gamma_mixture_np(*data["mix"])
    assert np.allclose(pa, pb, rtol=1e-13, atol=1e-300)
    assert np.allclose(ca, cb, rtol=1e-13, atol=1e-15)


@needs_numba
def test_detect_and_bit_errors_paths_agree(data):
    assert np.array_equal(kernels.detect_nb(*data["det"]), kernels.detect_np(*data["det"]))
    assert kernels.bit_errors_nb(*data["bits"]) == kernels.bit_errors_np(*data["bits"])


def test_gamma_mixture_numpy_matches_scipy(data):
    from scipy import stats
    y, lw = data["mix"]
    pdf, cdf = kernels.gamma_mixture_np(y, lw)
    j = np.arange(lw.size)
    w = np.exp(lw)
    ref_pdf = (w[:, None] * stats.gamma.pdf(y[None, :], j[:, None] + 1)).sum(0)
    ref_cdf = (w[:, None] * stats.gamma.cdf(y[None, :], j[:, None] + 1)).sum(0)
    assert np.allclose(pdf, ref_pdf, rtol=1e-12, atol=1e-300)
    assert np.allclose(cdf, ref_cdf, rtol=1e-12, atol=1e-15)


_SCRIPT = """
import numpy as np
from fdadm import NUMBA_ENABLED
from fdadm.config import ExperimentConfig
from fdadm.montecarlo import simulate_ber, secrecy_analytic
cfg = ExperimentConfig.defaults()
ber = simulate_ber(cfg, "SP", cfg.bob(), 6.0, 20000, 5, 0, "QAM", 16)[0]
sr = secrecy_analytic(cfg, "SP", 10.0, 5.0)[0]
print(NUMBA_ENABLED, repr(ber), repr(sr))
"""


@pytest.mark.slow
def test_numpy_fallback_end_to_end():
    outs = {}
    for flag in ("0", "1"):
        env = dict(os.environ, FDADM_DISABLE_NUMBA=flag)
        res = subprocess.run([sys.executable, "-c", _SCRIPT], env=env, capture_output=True,
                             text=True, check=True)
        outs[flag] = res.stdout.split()
    assert outs["1"][0] == "False"
    assert outs["0"][0] == str(NUMBA_ENABLED)
    assert float(outs["0"][1]) == float(outs["1"][1])
    assert float(outs["0"][2]) == pytest.approx(float(outs["1"][2]), rel=1e-11)
