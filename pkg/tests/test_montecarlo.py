import dataclasses
import math

import numpy as np
import pytest

from fdadm.analytics import ber_mpsk
from fdadm.array_geometry import Position
from fdadm.errors import ArgumentError
from fdadm.montecarlo import (Metric, SweepSpec, _AnLeakage, run_ber_sweep, run_memory_sweep,
                              run_secrecy_sweep, run_sweep, secrecy_analytic, simulate_ber,
                              simulate_secrecy)
from fdadm.precoder import Method, design


def test_spec_validation(cfg):
    with pytest.raises(ArgumentError):
        SweepSpec(Metric.BER_vs_SNR, ())
    with pytest.raises(ArgumentError):
        SweepSpec(Metric.BER_vs_SNR, (1.0, 3.0, 2.0))
    with pytest.raises(ArgumentError):
        SweepSpec(Metric.BER_vs_SNR, (1.0,), trials=0)
    with pytest.raises(ArgumentError):
        SweepSpec(Metric.BER_vs_SNR, (1.0,), methods=())
    s = SweepSpec("SR_vs_lambdaE", (10.0, 0.0), ("sp",))
    assert s.metric is Metric.SR_vs_lambdaE and s.methods == (Method.SP,)
    assert s.trials == cfg["run.trials"] and s.seed == cfg["run.seed"]
    assert Metric.SOP_vs_lambdaB.sweep_variable == ("lambda_b", "dB")
    with pytest.raises(ArgumentError):
        run_ber_sweep(s)
    with pytest.raises(ArgumentError):
        run_secrecy_sweep(SweepSpec(Metric.BER_vs_SNR, (1.0,)))


def test_ber_at_bob_matches_theory(cfg):
    p, se, bits = simulate_ber(cfg, "SP", cfg.bob(), 10.0, 100_000, 11, 0)
    ref = float(ber_mpsk(0.81 * 10.0, 4))
    assert bits == 200_000
    assert abs(p - ref) <= 3 * math.sqrt(ref * (1 - ref) / bits)


def test_ber_less_signal_power_is_worse(cfg):
    a = simulate_ber(cfg, "SP", cfg.bob(), 8.0, 100_000, 2, 0)[0]
    b = simulate_ber(cfg, "NoAN", cfg.bob(), 8.0, 100_000, 2, 0)[0]
    assert a > b


@pytest.mark.parametrize("method", ["SP", "ZF", "SVD"])
def test_ber_off_target_scrambled(cfg, method):
    for pos in (Position.from_degrees(1000, -40, 30), Position.from_degrees(4000, 20, 30), cfg.eve()):
        p = simulate_ber(cfg, method, pos, 10.0, 20_000, 3, 0)[0]
        assert 0.3 <= p <= 0.6


def test_ber_qam_and_fading(cfg):
    p, _, _ = simulate_ber(cfg, "ZF", cfg.bob(), 30.0, 20_000, 1, 0, "QAM", 16)
    assert p < 1e-3
    faded = simulate_ber(cfg, "SP", cfg.bob(), 10.0, 50_000, 1, 0, fading=True)[0]
    clean = simulate_ber(cfg, "SP", cfg.bob(), 10.0, 50_000, 1, 0)[0]
    assert faded > clean


def test_an_power_fair_across_methods(h_bob, h_eve, rng):
    powers = {}
    for m in ("SP", "ZF", "SVD"):
        pre = design(m, h_bob, 10)
        if m == "SP":
            z = (rng.standard_normal(100_000) + 1j * rng.standard_normal(100_000)) / math.sqrt(2)
            powers[m] = np.mean(np.abs(pre.alpha * z) ** 2) * np.vdot(pre.p2, pre.p2).real
        else:
            powers[m] = 1.0  # every draw normalized to unit power
    assert max(powers.values()) == pytest.approx(min(powers.values()), rel=0.01)
    # and the per-draw leakage helper reproduces the explicit computation
    pre = design("ZF", h_bob, 10)
    leak = _AnLeakage(pre, h_eve)
    draws = leak.draw(np.random.default_rng(0), 10)
    z = (lambda r: (r.standard_normal((10, pre.width)) + 1j * r.standard_normal((10, pre.width))) / math.sqrt(2))(
        np.random.default_rng(0))
    v = z @ pre.an_basis.T
    ref = (v @ h_eve.conj()) / np.linalg.norm(v, axis=1)
    assert np.allclose(draws, ref, atol=1e-12)


def test_determinism_and_worker_independence(cfg):
    spec = SweepSpec(Metric.BER_vs_SNR, (0.0, 6.0), trials=2000, seed=9, fixed=cfg)
    a = run_ber_sweep(spec)
    b = run_ber_sweep(spec)
    c = run_ber_sweep(spec, workers=2)
    def key(res):
        return [tuple(repr(v) for v in dataclasses.astuple(p)) for p in res.points]

    assert key(a) == key(b) == key(c)
    assert {p.metric for p in a.points} == {"ber_bob", "ber_eve"}
    for p in a.points:
        assert 0 <= p.mc_value <= 1 and p.mc_stderr >= 0


def test_positional_sweep_records(cfg):
    res = run_sweep(SweepSpec(Metric.BER_vs_azimuth, (10.0, 20.0), ("SP",), trials=2000, fixed=cfg))
    pts = res.select("SP", "ber")
    assert [p.sweep_value for p in pts] == [10.0, 20.0]
    assert pts[1].mc_value < pts[0].mc_value


def test_secrecy_mc_matches_series(cfg):
    mc, se = simulate_secrecy(cfg, "SP", 15.0, 10.0, 100_000, 4, 0)
    th, lo = secrecy_analytic(cfg, "SP", 15.0, 10.0)
    assert abs(mc - th) <= max(3 * se, 0.05)
    assert lo <= th
    p, pse = simulate_secrecy(cfg, "SP", 20.0, 10.0, 100_000, 4, 1, r0=0.5)
    pth, ub = secrecy_analytic(cfg, "SP", 20.0, 10.0, r0=0.5)
    assert abs(p - pth) <= max(3 * pse, 0.01)
    assert pth <= ub


def test_methods_give_similar_secrecy_rate(cfg):
    vals = {m: simulate_secrecy(cfg, m, 15.0, 10.0, 100_000, 6, 0) for m in ("SP", "ZF", "SVD")}
    for m in ("ZF", "SVD"):
        diff = abs(vals[m][0] - vals["SP"][0])
        assert diff <= 2 * max(vals[m][1], vals["SP"][1])


def test_noan_secrecy_vanishes_for_strong_eve(cfg):
    mc, _ = simulate_secrecy(cfg, "NoAN", 10.0, 70.0, 50_000, 1, 0)
    assert mc < 0.01


def test_sop_monotone_in_threshold(cfg):
    a = simulate_secrecy(cfg, "SP", 10.0, 10.0, 50_000, 1, 0, r0=0.0)[0]
    b = simulate_secrecy(cfg, "SP", 10.0, 10.0, 50_000, 1, 0, r0=0.5)[0]
    assert a <= b


def test_secrecy_sweep_structure(cfg):
    spec = SweepSpec(Metric.SOP_vs_lambdaE, (0.0, 10.0), ("SP", "NoAN"), trials=1000, fixed=cfg)
    res = run_secrecy_sweep(spec)
    sp = res.select("SP", "sop")
    assert len(sp) == 2 and all(p.bound_kind == "upper_bound" for p in sp)
    noan = res.select("NoAN")
    assert all(p.bound_kind == "" and math.isnan(p.bound_value) for p in noan)
    fast = run_secrecy_sweep(SweepSpec(Metric.SR_vs_lambdaB, (5.0,), ("SP",), trials=100, fixed=cfg,
                                       analytic=False))
    assert math.isnan(fast.points[0].analytic_value)


def test_memory_sweep(cfg):
    res = run_memory_sweep(SweepSpec(Metric.MEMORY_vs_NL, tuple(range(1, 26)), fixed=cfg, trials=1))
    tot = {(p.method, p.sweep_value): p.analytic_value for p in res.select(metric="memory_total")}
    assert tot[("SP", 10.0)] == 148 and tot[("ZF", 10.0)] == 21_756 and tot[("SVD", 10.0)] == 2_960
    r_zf = [p.analytic_value for p in res.select(metric="memory_ratio_to_ZF")]
    r_svd = [p.analytic_value for p in res.select(metric="memory_ratio_to_SVD")]
    assert np.all(np.diff(r_zf) < 0) and np.all(np.diff(r_svd) < 0)
    one = run_memory_sweep(SweepSpec(Metric.MEMORY_vs_NL, (1,), fixed=cfg.with_overrides({"array.subcarriers": 1}), trials=1))
    assert {p.method: p.analytic_value for p in one.select(metric="memory_total")} == {"SP": 4, "ZF": 12, "SVD": 8}
    with pytest.raises(ArgumentError):
        run_memory_sweep(SweepSpec(Metric.MEMORY_vs_NL, (1.5,), trials=1))
