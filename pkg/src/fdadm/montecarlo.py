"""
Seeded Monte Carlo sweeps.

Every grid point draws from its own streams, derived from the sweep seed
with :class:`numpy.random.SeedSequence`:

* ``(seed, point)`` feeds symbols, receiver noise and fading, shared by
  all methods at that point (common random numbers);
* ``(seed, point, method)`` feeds the artificial-noise draws.

Results therefore do not depend on execution order or worker count.
"""

from __future__ import annotations

import enum
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import analytics, modulation
from .array_geometry import Position, steering_vector
from .config import ExperimentConfig, db_to_linear
from .errors import ArgumentError
from .ftr_channel import FtrParams, sample_coefficient, sample_snr
from .link_model import eve_gains, gamma_e_from_lambda
from .precoder import Method, PowerSplit, design, memory_footprint

_CHUNK = 16_384
_METHOD_INDEX = {Method.SP: 0, Method.ZF: 1, Method.SVD: 2, Method.NoAN: 3}


class Metric(str, enum.Enum):
    BER_vs_range = "BER_vs_range"
    BER_vs_azimuth = "BER_vs_azimuth"
    BER_vs_elevation = "BER_vs_elevation"
    BER_vs_SNR = "BER_vs_SNR"
    SR_vs_lambdaB = "SR_vs_lambdaB"
    SR_vs_lambdaE = "SR_vs_lambdaE"
    SOP_vs_lambdaB = "SOP_vs_lambdaB"
    SOP_vs_lambdaE = "SOP_vs_lambdaE"
    MEMORY_vs_NL = "MEMORY_vs_NL"

    @property
    def sweep_variable(self) -> tuple[str, str]:
        """Name and unit of the swept quantity."""
        return _SWEEP_VARIABLE[self]

    @property
    def family(self) -> str:
        return self.value.split("_", 1)[0]


_SWEEP_VARIABLE = {
    Metric.BER_vs_range: ("range", "m"),
    Metric.BER_vs_azimuth: ("azimuth", "deg"),
    Metric.BER_vs_elevation: ("elevation", "deg"),
    Metric.BER_vs_SNR: ("snr", "dB"),
    Metric.SR_vs_lambdaB: ("lambda_b", "dB"),
    Metric.SR_vs_lambdaE: ("lambda_e", "dB"),
    Metric.SOP_vs_lambdaB: ("lambda_b", "dB"),
    Metric.SOP_vs_lambdaE: ("lambda_e", "dB"),
    Metric.MEMORY_vs_NL: ("n_half", "count"),
}


@dataclass(frozen=True)
class SweepSpec:
    """One experiment.

    ``fixed`` supplies every parameter that is not swept. ``trials``,
    ``seed`` and the modulation default to the values in ``fixed``.
    """

    metric: Metric
    grid: tuple
    methods: tuple = (Method.SP, Method.ZF, Method.SVD)
    fixed: ExperimentConfig = field(default_factory=ExperimentConfig.defaults)
    trials: int | None = None
    seed: int | None = None
    modulation: tuple | None = None
    r0: float | None = None
    analytic: bool = True

    def __post_init__(self):
        object.__setattr__(self, "metric", Metric(self.metric))
        grid = tuple(float(g) for g in self.grid)
        if not grid:
            raise ArgumentError("grid must be nonempty")
        diffs = np.diff(grid)
        if grid and not (np.all(diffs > 0) or np.all(diffs < 0)):
            raise ArgumentError("grid must be strictly monotone")
        object.__setattr__(self, "grid", grid)
        object.__setattr__(self, "methods", tuple(Method.parse(m) for m in self.methods))
        if not self.methods:
            raise ArgumentError("at least one method is required")
        v = self.fixed.values
        if self.trials is None:
            object.__setattr__(self, "trials", v["run.trials"])
        if self.seed is None:
            object.__setattr__(self, "seed", v["run.seed"])
        if self.modulation is None:
            object.__setattr__(self, "modulation", (v["modulation.scheme"], v["modulation.order"]))
        if self.r0 is None:
            object.__setattr__(self, "r0", v["secrecy.r0"])
        if self.trials < 1:
            raise ArgumentError("trials must be >= 1")
        modulation.constellation(*self.modulation)


@dataclass(frozen=True)
class SweepPoint:
    """One (grid value, method, metric) cell of a sweep."""

    sweep_value: float
    method: str
    metric: str
    mc_value: float = math.nan
    mc_stderr: float = math.nan
    analytic_value: float = math.nan
    bound_value: float = math.nan
    bound_kind: str = ""


@dataclass(frozen=True)
class SweepResult:
    spec: SweepSpec
    points: tuple

    def select(self, method=None, metric=None):
        out = []
        for p in self.points:
            if method is not None and p.method != Method.parse(method).value:
                continue
            if metric is not None and p.metric != metric:
                continue
            out.append(p)
        return out


# ---------------------------------------------------------------------------
# streams
# ---------------------------------------------------------------------------


def _streams(seed, point, method):
    common = np.random.default_rng(np.random.SeedSequence([seed, point]))
    an = np.random.default_rng(np.random.SeedSequence([seed, point, _METHOD_INDEX[method] + 1]))
    return common, an


def _cn(rng, shape):
    """Standard circular complex Gaussian draws (unit variance)."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) * math.sqrt(0.5)


def _split_for(method, cfg: ExperimentConfig) -> PowerSplit:
    return PowerSplit(1.0, 0.0) if method is Method.NoAN else cfg.split()


class _AnLeakage:
    """Per-draw AN amplitude ``h^H (AN direction)`` at one receiver.

    SP: ``alpha (h^H p2) z``. ZF/SVD: ``(B^H h)^H z / ||B z||`` where the
    norm uses the projector (ZF) or orthonormal-column (SVD) structure.
    """

    def __init__(self, pre, h):
        self.pre = pre
        self.method = pre.method
        self.c = pre.an_basis.conj().T @ h  # B^H h
        self.width = pre.width

    def draw(self, rng, n):
        if self.method is Method.NoAN:
            return np.zeros(n, dtype=complex)
        if self.method is Method.SP:
            z = _cn(rng, n)
            return self.pre.alpha * np.conj(self.c[0]) * z
        out = np.empty(n, dtype=complex)
        for lo in range(0, n, _CHUNK):
            z = _cn(rng, (min(_CHUNK, n - lo), self.width))
            num = z @ self.c.conj()
            nrm2 = np.sum(z.real**2 + z.imag**2, axis=1)
            if self.method is Method.ZF:
                nrm2 = nrm2 - np.abs(z @ self.pre.p1.conj()) ** 2
            out[lo:lo + z.shape[0]] = num / np.sqrt(nrm2)
        return out


# ---------------------------------------------------------------------------
# BER
# ---------------------------------------------------------------------------


def simulate_ber(cfg: ExperimentConfig, method, rx: Position, snr_db: float, trials: int,
                 seed: int, point: int, scheme="PSK", m_order=4, fading=False):
    """Bit error rate at receiver ``rx`` for precoders designed toward Bob.

    Returns ``(ber, stderr, bits)``; ``stderr`` is the binomial standard
    error of the estimate.
    """
    method = Method.parse(method)
    arr = cfg.array()
    t = cfg["array.time"]
    ps = cfg["power.ps"]
    split = _split_for(method, cfg)
    h_b = steering_vector(arr, cfg.bob(), t)
    pre = design(method, h_b, arr.n_half)
    h_rx = steering_vector(arr, rx, t)
    g1 = complex(np.vdot(h_rx, pre.p1))
    leak = _AnLeakage(pre, h_rx)
    noise_var = ps / db_to_linear(snr_db)

    common, an_rng = _streams(seed, point, method)
    pts = modulation.constellation(scheme, m_order)
    labels = common.integers(0, m_order, trials)
    noise = _cn(common, trials) * math.sqrt(noise_var)
    if fading:
        ftr = FtrParams(cfg["ftr_bob.m"], cfg["ftr_bob.K"], cfg["ftr_bob.delta"],
                        1.0 / (2.0 * (1.0 + cfg["ftr_bob.K"])))
        eps = sample_coefficient(ftr, common, trials)
    else:
        eps = 1.0
    an = leak.draw(an_rng, trials)
    amp = math.sqrt(ps)
    y = eps * (split.beta1 * amp * g1 * pts[labels] + split.beta2 * amp * an) + noise
    if fading:
        # coherent receiver: equalize its own fading
        y = y / eps
    detected = modulation.demodulate(y, scheme, m_order, split.beta1 * amp)
    bits = trials * modulation.bits_per_symbol(m_order)
    errors = modulation.count_bit_errors(labels, detected)
    p = errors / bits
    return p, math.sqrt(p * (1.0 - p) / bits), bits


def _ber_theory(cfg, method, snr_db, scheme, m_order):
    if scheme != "PSK":
        return math.nan
    beta1 = _split_for(method, cfg).beta1
    return float(analytics.ber_mpsk(beta1 * beta1 * db_to_linear(snr_db), m_order))


def _ber_point(args):
    spec, idx, value = args
    cfg = spec.fixed
    scheme, m_order = spec.modulation
    fading = cfg["ber.fading"]
    bob = cfg.bob()
    out = []
    snr_b = 10.0 * math.log10(cfg["power.ps"] / cfg["power.noise_var_b"])
    for method in spec.methods:
        if spec.metric is Metric.BER_vs_SNR:
            for name, rx in (("ber_bob", bob), ("ber_eve", cfg.eve())):
                p, se, _ = simulate_ber(cfg, method, rx, value, spec.trials, spec.seed, idx,
                                        scheme, m_order, fading)
                th = _ber_theory(cfg, method, value, scheme, m_order) if (name == "ber_bob" and not fading) else math.nan
                out.append(SweepPoint(value, method.value, name, p, se, th))
            continue
        if spec.metric is Metric.BER_vs_range:
            rx = Position(value, bob.theta, bob.psi)
        elif spec.metric is Metric.BER_vs_azimuth:
            rx = Position(bob.r, math.radians(value), bob.psi)
        else:
            rx = Position(bob.r, bob.theta, math.radians(value))
        p, se, _ = simulate_ber(cfg, method, rx, snr_b, spec.trials, spec.seed, idx,
                                scheme, m_order, fading)
        out.append(SweepPoint(value, method.value, "ber", p, se))
    return out


# ---------------------------------------------------------------------------
# secrecy rate and outage
# ---------------------------------------------------------------------------


def simulate_secrecy(cfg: ExperimentConfig, method, lambda_b_db: float, lambda_e_db: float,
                     trials: int, seed: int, point: int, r0: float | None = None):
    """Monte Carlo secrecy rate or outage at one operating point.

    Returns ``(mean, stderr)`` of ``[log2((1+g_B)/(1+g_E))]^+`` when ``r0`` is
    None, otherwise of the indicator ``log2((1+g_B)/(1+g_E)) < r0``.
    """
    method = Method.parse(method)
    arr = cfg.array()
    t = cfg["array.time"]
    split = _split_for(method, cfg)
    h_b = steering_vector(arr, cfg.bob(), t)
    h_e = steering_vector(arr, cfg.eve(), t)
    pre = design(method, h_b, arr.n_half)
    gains = eve_gains(h_e, pre, split)

    common, an_rng = _streams(seed, point, method)
    lam_b = sample_snr(cfg.ftr_bob(lambda_b_db), common, trials)
    lam_e = sample_snr(cfg.ftr_eve(lambda_e_db), common, trials)
    g_b = split.beta1**2 * lam_b
    if method in (Method.ZF, Method.SVD):
        a2 = np.abs(_AnLeakage(pre, h_e).draw(an_rng, trials)) ** 2
        g_e = gains.eta * lam_e / (split.beta2**2 * a2 * lam_e + 1.0)
    else:
        g_e = gamma_e_from_lambda(lam_e, gains)
    rate = np.log2(1.0 + g_b) - np.log2(1.0 + g_e)
    if r0 is None:
        x = np.maximum(rate, 0.0)
        return float(x.mean()), float(x.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    p = float(np.mean(rate < r0))
    return p, math.sqrt(p * (1.0 - p) / trials)


def secrecy_analytic(cfg: ExperimentConfig, method, lambda_b_db, lambda_e_db, r0=None):
    """Series value and bound matching :func:`simulate_secrecy`.

    Returns ``(value, bound)``; the bound is the secrecy-rate lower bound or
    the outage upper bound, NaN when Eve's SINR is unbounded.
    """
    method = Method.parse(method)
    arr = cfg.array()
    t = cfg["array.time"]
    split = _split_for(method, cfg)
    pre = design(method, steering_vector(arr, cfg.bob(), t), arr.n_half)
    gains = eve_gains(steering_vector(arr, cfg.eve(), t), pre, split)
    fb = cfg.ftr_bob(lambda_b_db)
    fe = cfg.ftr_eve(lambda_e_db)
    sopts = cfg.series_options()
    with warnings.catch_warnings():
        if method is Method.NoAN:
            warnings.simplefilter("ignore", UserWarning)
        return _secrecy_values(fb, fe, split, gains, sopts, r0)


def _secrecy_values(fb, fe, split, gains, sopts, r0):
    if r0 is None:
        value = analytics.secrecy_rate(fb, fe, split.beta1, gains, sopts).value
        bound = math.nan if gains.degenerate else analytics.sr_lower_bound(fb, split.beta1, gains.tau, sopts)
    else:
        value = analytics.outage(fb, fe, split.beta1, gains, r0, sopts).value
        bound = math.nan if gains.degenerate else analytics.sop_upper_bound(fb, split.beta1, gains.tau, r0, sopts)
    return value, bound


def _secrecy_point(args):
    spec, idx, value = args
    cfg = spec.fixed
    over_b = spec.metric in (Metric.SR_vs_lambdaB, Metric.SOP_vs_lambdaB)
    lb = value if over_b else cfg["secrecy.lambda_b_db"]
    le = cfg["secrecy.lambda_e_db"] if over_b else value
    is_sop = spec.metric.family == "SOP"
    r0 = spec.r0 if is_sop else None
    name = "sop" if is_sop else "secrecy_rate"
    kind = "upper_bound" if is_sop else "lower_bound"
    out = []
    for method in spec.methods:
        mc, se = simulate_secrecy(cfg, method, lb, le, spec.trials, spec.seed, idx, r0)
        th, bound = secrecy_analytic(cfg, method, lb, le, r0) if spec.analytic else (math.nan, math.nan)
        out.append(SweepPoint(value, method.value, name, mc, se, th, bound, kind if np.isfinite(bound) else ""))
    return out


# ---------------------------------------------------------------------------
# memory
# ---------------------------------------------------------------------------


def run_memory_sweep(spec: SweepSpec) -> SweepResult:
    """Table-based storage per method and the SP/ZF, SP/SVD ratios over N."""
    if spec.metric is not Metric.MEMORY_vs_NL:
        raise ArgumentError("memory sweep needs metric MEMORY_vs_NL")
    sub = spec.fixed["array.subcarriers"]
    out = []
    for value in spec.grid:
        n = int(value)
        if n != value:
            raise ArgumentError("memory grid values must be integers")
        tot = {m: memory_footprint(m, n, sub).total for m in (Method.SP, Method.ZF, Method.SVD)}
        for m in spec.methods:
            if m is not Method.NoAN:
                out.append(SweepPoint(value, m.value, "memory_total", analytic_value=float(tot[m])))
        out.append(SweepPoint(value, "SP", "memory_ratio_to_ZF", analytic_value=tot[Method.SP] / tot[Method.ZF]))
        out.append(SweepPoint(value, "SP", "memory_ratio_to_SVD", analytic_value=tot[Method.SP] / tot[Method.SVD]))
    return SweepResult(spec, tuple(out))


# ---------------------------------------------------------------------------
# drivers
# ---------------------------------------------------------------------------


def _run(spec, worker, workers):
    tasks = [(spec, i, v) for i, v in enumerate(spec.grid)]
    if workers and workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            chunks = list(pool.map(worker, tasks))
    else:
        chunks = [worker(t) for t in tasks]
    return SweepResult(spec, tuple(p for chunk in chunks for p in chunk))


def run_ber_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """BER over position or SNR; see :class:`Metric`."""
    if spec.metric.family != "BER":
        raise ArgumentError(f"{spec.metric.value} is not a BER sweep")
    return _run(spec, _ber_point, workers)


def run_secrecy_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    """Average secrecy rate or outage over Bob's or Eve's average SNR."""
    if spec.metric.family not in ("SR", "SOP"):
        raise ArgumentError(f"{spec.metric.value} is not a secrecy sweep")
    return _run(spec, _secrecy_point, workers)


def run_sweep(spec: SweepSpec, workers: int = 1) -> SweepResult:
    fam = spec.metric.family
    if fam == "BER":
        return run_ber_sweep(spec, workers)
    if fam == "MEMORY":
        return run_memory_sweep(spec)
    return run_secrecy_sweep(spec, workers)


__all__ = [
    "Metric", "SweepSpec", "SweepPoint", "SweepResult", "simulate_ber", "simulate_secrecy",
    "secrecy_analytic", "run_ber_sweep", "run_secrecy_sweep", "run_memory_sweep", "run_sweep",
]
