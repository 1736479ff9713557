"""
Invariant suites run by ``fdadm validate``.

Each suite returns a :class:`SuiteResult` listing every failed check, so a
run reports all violations instead of stopping at the first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import stats

from . import analytics
from .array_geometry import Position, steering_vector
from .config import ExperimentConfig
from .ftr_channel import FtrSeries, sample_snr
from .montecarlo import secrecy_analytic, simulate_secrecy
from .precoder import Method, design, max_leakage

ORTHO_TOL = 1e-10
KS_TOL = 0.01
NORM_TOL = 1e-6
PSI_TOL = 1e-6
SR_ABS_TOL = 0.05
SOP_ABS_TOL = 0.01


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str):
        self.checks += 1
        if not ok:
            self.failures.append(message)

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.checks - len(self.failures)}/{self.checks} checks"


def precoder_orthogonality(cfg: ExperimentConfig, positions: int = 100, seed: int = 0) -> SuiteResult:
    """AN leakage toward Bob and ``h_B^H p1`` over random Bob positions."""
    res = SuiteResult("precoder orthogonality")
    arr = cfg.array()
    rng = np.random.default_rng([cfg["run.seed"], seed])
    for _ in range(positions):
        pos = Position(rng.uniform(100.0, 10_000.0), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        h = steering_vector(arr, pos, cfg["array.time"])
        for method in (Method.SP, Method.ZF, Method.SVD):
            pre = design(method, h, arr.n_half)
            leak = max_leakage(pre, h)
            gain = abs(np.vdot(h, pre.p1) - 1.0)
            res.check(leak <= ORTHO_TOL, f"{method.value} at {pos}: leakage {leak:.3g}")
            res.check(gain <= ORTHO_TOL, f"{method.value} at {pos}: |h^H p1 - 1| = {gain:.3g}")
    return res


def ftr_ks(cfg: ExperimentConfig, samples: int = 100_000) -> SuiteResult:
    """Kolmogorov-Smirnov distance between sampled and series SNR laws."""
    res = SuiteResult("FTR distribution")
    opts = cfg.series_options()
    links = (("bob", cfg.ftr_bob(cfg["secrecy.lambda_b_db"])), ("eve", cfg.ftr_eve(cfg["secrecy.lambda_e_db"])))
    for idx, (name, p) in enumerate(links):
        series = FtrSeries(p, opts)
        norm = series.normalization()
        res.check(abs(norm - 1.0) <= NORM_TOL, f"{name}: normalization {norm!r}")
        rng = np.random.default_rng([cfg["run.seed"], 7, idx])
        x = sample_snr(p, rng, samples)
        d = stats.kstest(x, series.cdf).statistic
        res.check(d <= KS_TOL, f"{name}: KS distance {d:.4g}")
    return res


def psi_identity(cfg: ExperimentConfig) -> SuiteResult:
    """``Psi(1, u-1, 0, v, 0, inf)`` against the closed form ``S(u, v)``."""
    res = SuiteResult("Psi = S identity")
    qopts = cfg.quadrature_options()
    for u in range(1, 6):
        for v in (0.25, 0.5, 1.0, 2.0, 5.0):
            a = analytics.psi_integral(1.0, u - 1, 0, v, 0.0, math.inf, qopts)
            b = analytics.s_closed(u, v)
            rel = abs(a - b) / abs(b)
            res.check(rel <= PSI_TOL, f"u={u}, v={v}: relative error {rel:.3g}")
    return res


def _secrecy_points(cfg):
    lb = cfg["secrecy.lambda_b_db"]
    return ((lb - 10.0, cfg["secrecy.lambda_e_db"]), (lb, cfg["secrecy.lambda_e_db"]))


def secrecy_rate_vs_mc(cfg: ExperimentConfig, cache: dict) -> SuiteResult:
    res = SuiteResult("secrecy rate series vs Monte Carlo")
    trials, seed = cfg["run.trials"], cfg["run.seed"]
    for k, (lb, le) in enumerate(_secrecy_points(cfg)):
        mc, se = simulate_secrecy(cfg, Method.SP, lb, le, trials, seed, k)
        th, bound = secrecy_analytic(cfg, Method.SP, lb, le)
        cache[("sr", lb, le)] = (th, bound)
        tol = max(3.0 * se, SR_ABS_TOL)
        res.check(abs(th - mc) <= tol, f"lambda_B={lb} dB, lambda_E={le} dB: series {th:.5f}, MC {mc:.5f}")
    return res


def outage_vs_mc(cfg: ExperimentConfig, cache: dict) -> SuiteResult:
    res = SuiteResult("outage series vs Monte Carlo")
    trials, seed = cfg["run.trials"], cfg["run.seed"]
    for r0 in sorted({0.0, cfg["secrecy.r0"]}):
        for k, (lb, le) in enumerate(_secrecy_points(cfg)):
            mc, se = simulate_secrecy(cfg, Method.SP, lb, le, trials, seed, k, r0)
            th, bound = secrecy_analytic(cfg, Method.SP, lb, le, r0)
            cache[("sop", r0, lb, le)] = (th, bound)
            tol = max(3.0 * se, SOP_ABS_TOL)
            res.check(abs(th - mc) <= tol,
                      f"r0={r0}, lambda_B={lb} dB, lambda_E={le} dB: series {th:.5f}, MC {mc:.5f}")
    return res


def bound_ordering(cfg: ExperimentConfig, cache: dict) -> SuiteResult:
    """SR above its lower bound, outage below its upper bound and monotone in ``r0``."""
    res = SuiteResult("bound ordering")
    r0s = sorted({0.0, cfg["secrecy.r0"]})
    for lb, le in _secrecy_points(cfg):
        th, bound = cache.get(("sr", lb, le)) or secrecy_analytic(cfg, Method.SP, lb, le)
        res.check(th >= bound, f"SR {th:.5f} below lower bound {bound:.5f} at ({lb}, {le}) dB")
        prev = -math.inf
        for r0 in r0s:
            p, ub = cache.get(("sop", r0, lb, le)) or secrecy_analytic(cfg, Method.SP, lb, le, r0)
            res.check(p <= ub + 1e-12, f"SOP {p:.5f} above upper bound {ub:.5f} at r0={r0}, ({lb}, {le}) dB")
            res.check(p >= prev - 1e-12, f"SOP not monotone in r0 at ({lb}, {le}) dB")
            prev = p
    return res


def run_all(cfg: ExperimentConfig, progress=None) -> list:
    """Run every suite in order; ``progress`` is called with each result."""
    cache: dict = {}
    suites = (
        lambda: precoder_orthogonality(cfg),
        lambda: ftr_ks(cfg),
        lambda: psi_identity(cfg),
        lambda: secrecy_rate_vs_mc(cfg, cache),
        lambda: outage_vs_mc(cfg, cache),
        lambda: bound_ordering(cfg, cache),
    )
    out = []
    for suite in suites:
        r = suite()
        out.append(r)
        if progress is not None:
            progress(r)
    return out
