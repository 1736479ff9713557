"""
Closed-form and series evaluation of link metrics.

* BER of M-PSK under AWGN,
* the integral family ``Psi`` and its closed form ``S`` at ``tau = inf``,
* average secrecy rate as ``I1 + I2 - I3`` and its lower bound,
* secrecy outage probability and its upper bound,
* direct-quadrature counterparts used as oracles and as the fallback
  when artificial noise does not reach Eve.

Throughout, ``a = 1/(2 beta1^2 sigma_B^2)`` and ``b = 1/(2 mu sigma_E^2)``
where ``sigma^2`` are the diffuse variances of the faded SNRs ``lambda_B``
and ``lambda_E`` (see :func:`fdadm.ftr_channel.sigma_from_avg_snr`).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate
from scipy.special import erfc, exp1, gammaincc, gammaln

from . import _psi_tables
from .errors import ArgumentError, ConvergenceError, DomainError, NumericalError
from .ftr_channel import FtrParams, FtrSeries, SeriesOptions
from .link_model import EveGains

LN2 = math.log(2.0)


@dataclass(frozen=True)
class QuadratureOptions:
    rel_tol: float = 1e-8
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ArgumentError("rel_tol must be positive")
        if self.max_subdivisions < 1:
            raise ArgumentError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class SecrecyResult:
    """Metric value with its series pieces.

    ``i1, i2, i3`` are set for the average secrecy rate; for SOP ``i1``
    holds the Eve-only term and ``i2`` the subtracted Bob-dependent term.
    ``truncation_error_bound`` is the magnitude of the last included shell
    of the double series.
    """

    value: float
    i1: float = math.nan
    i2: float = math.nan
    i3: float = math.nan
    truncation_error_bound: float = 0.0


# ---------------------------------------------------------------------------
# BER
# ---------------------------------------------------------------------------


def q_function(u):
    """Gaussian tail ``Q(u) = erfc(u / sqrt 2) / 2``."""
    return 0.5 * erfc(np.asarray(u, dtype=float) / math.sqrt(2.0))


def ber_mpsk(gamma_b, m_order: int):
    """``2/log2(M) * Q(sqrt(2 gamma) sin(pi/M))``.

    For ``M = 4`` with Gray mapping this is the exact bit error rate; for
    ``M = 2`` it is twice the exact BPSK value.
    """
    m_order = int(m_order)
    if m_order < 2 or m_order & (m_order - 1):
        raise ArgumentError(f"M must be a power of two >= 2, got {m_order}")
    g = np.asarray(gamma_b, dtype=float)
    if np.any(g < 0):
        raise ArgumentError("SNR must be non-negative")
    return 2.0 / math.log2(m_order) * q_function(np.sqrt(2.0 * g) * math.sin(math.pi / m_order))


# ---------------------------------------------------------------------------
# Psi and S
# ---------------------------------------------------------------------------


def _check_psi_args(v1, v2, v3, v4, v5, tau):
    if v1 not in (0, 1):
        raise ArgumentError("v1 must be 0 or 1")
    if min(v2, v3, v4, v5) < 0:
        raise ArgumentError("v2..v5 must be non-negative")
    if not tau > 0:
        raise ArgumentError("tau must be positive")
    if math.isinf(tau):
        if v3 != 0 or v5 != 0 or not v4 > 0:
            raise DomainError("tau = inf requires v3 = v5 = 0 and v4 > 0")
    elif v5 == 0 and v3 >= 1:
        raise DomainError("v3 >= 1 with v5 = 0 diverges at t = tau")


def _psi_log_integrand(v1, v2, v3, v4, v5, tau):
    if math.isinf(tau):

        def f(s):
            t = np.exp(s)
            out = (v2 + 1.0) * s - v4 * t
            if v1:
                out = out + np.log(np.log1p(t))
            return out

        return f
    log_tau = math.log(tau)

    def f(s):
        l1pe = np.logaddexp(0.0, s)
        log_t = log_tau + s - l1pe
        log_r = log_tau - l1pe
        t = np.exp(log_t)
        with np.errstate(over="ignore"):
            u = np.exp(s)
        out = v2 * log_t - v3 * log_r - v4 * t - v5 * u + log_tau + s - 2.0 * l1pe
        if v1:
            out = out + np.log(np.log1p(t))
        return out

    return f


def log_psi_integral(v1, v2, v3, v4, v5, tau, opts: QuadratureOptions = QuadratureOptions()):
    """Natural log of :func:`psi_integral`."""
    _check_psi_args(v1, v2, v3, v4, v5, tau)
    f = _psi_log_integrand(v1, v2, v3, v4, v5, tau)
    s = np.linspace(-120.0, 80.0, 8001)
    with np.errstate(over="ignore", invalid="ignore"):
        ls = f(s)
    ls = np.where(np.isnan(ls), -np.inf, ls)
    k = int(np.argmax(ls))
    peak = ls[k]
    if not np.isfinite(peak):
        raise DomainError("integrand vanishes or diverges on the whole range")
    keep = np.flatnonzero(ls > peak - 60.0)
    lo = s[max(keep[0] - 1, 0)]
    hi = s[min(keep[-1] + 1, s.size - 1)]
    if keep[0] == 0 or keep[-1] == s.size - 1:
        raise DomainError("integrand does not decay inside the search window")

    def g(x):
        with np.errstate(over="ignore"):
            return math.exp(float(f(np.asarray(x))) - peak)

    val, err, *rest = integrate.quad(
        g, lo, hi, points=[s[k]], epsabs=0.0, epsrel=opts.rel_tol,
        limit=opts.max_subdivisions, full_output=1,
    )
    if not err <= 10.0 * opts.rel_tol * abs(val):
        raise ConvergenceError(
            "Psi quadrature missed its tolerance", estimate=math.exp(peak) * val, last_term=err
        )
    return peak + math.log(val)


def psi_integral(v1, v2, v3, v4, v5, tau, opts: QuadratureOptions = QuadratureOptions()) -> float:
    """``int_0^tau ln^{v1}(1+t) t^{v2} (tau-t)^{-v3} exp(-v4 t - v5 t/(tau-t)) dt``.

    Computed in ``s = log(t/(tau-t))`` (or ``s = log t`` for ``tau = inf``)
    by adaptive quadrature around the peak of the integrand.

    Raises
    ------
    DomainError
        For parameter combinations where the integral diverges.
    ConvergenceError
        When the quadrature error estimate exceeds the tolerance.
    """
    return math.exp(log_psi_integral(v1, v2, v3, v4, v5, tau, opts))


def _scaled_upper_gamma(u: int, v: float) -> np.ndarray:
    """``g_n = e^v v^n Gamma(-n, v) = e^v E_{n+1}(v)`` for ``n = 0..u-1``."""
    n = np.arange(u, dtype=float)
    if v <= 1.0:
        # downward recurrence in the order, scaled: g_n = (1 - v g_{n-1}) / n
        g = np.empty(u)
        g[0] = math.exp(v) * exp1(v)
        for k in range(1, u):
            g[k] = (1.0 - v * g[k - 1]) / k
        return g
    # continued fraction for e^x E_p(x), p = n + 1, convergent for x > 1
    p = n + 1.0
    tiny = 1e-300
    b = v + p
    c = np.full(u, 1.0 / tiny)
    d = 1.0 / b
    h = d.copy()
    for i in range(1, 10_000):
        an = -i * (p - 1.0 + i)
        b = b + 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if np.all(np.abs(delta - 1.0) < 1e-15):
            return h
    raise ConvergenceError("continued fraction for E_p did not converge")


def log_s_closed(u: int, v: float) -> float:
    """Natural log of :func:`s_closed`."""
    if int(u) != u or u < 1:
        raise ArgumentError("u must be a positive integer")
    if not v > 0:
        raise ArgumentError("v must be positive")
    u = int(u)
    return float(gammaln(u) - u * math.log(v) + math.log(_scaled_upper_gamma(u, v).sum()))


def s_closed(u: int, v: float) -> float:
    """``S(u, v) = (u-1)! e^v sum_{k=1}^u Gamma(k-u, v) / v^k``.

    Equals ``int_0^inf ln(1+t) t^{u-1} e^{-v t} dt``. The incomplete gamma
    values at non-positive integer order come from the scaled recurrence
    ``g_n = (1 - v g_{n-1})/n`` for ``v <= 1`` and from a continued fraction
    otherwise, where the recurrence amplifies rounding by ``~e^v``.
    """
    return math.exp(log_s_closed(u, v))


def chi(j_b: int, beta1: float, sigma2_b: float, tau: float, opts=QuadratureOptions()) -> float:
    """``Psi(1, j_B, 0, 1/(2 beta1^2 sigma_B^2), 0, tau)``."""
    a = 1.0 / (2.0 * beta1 * beta1 * sigma2_b)
    if math.isinf(tau):
        return s_closed(j_b + 1, a)
    return psi_integral(1, j_b, 0, a, 0, tau, opts)


# ---------------------------------------------------------------------------
# series helpers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Links:
    bob: FtrSeries
    eve: FtrSeries
    a: float
    b: float
    tau: float
    beta1: float
    gains: EveGains


def _check_beta1(beta1):
    if not 0 < beta1 <= 1:
        raise ArgumentError("beta1 must lie in (0, 1]")


def _links(ftr_b, ftr_e, beta1, gains, sopts) -> _Links:
    _check_beta1(beta1)
    if gains.degenerate:
        raise DomainError("mu = 0: use the direct-quadrature evaluators")
    if gains.eta <= 0:
        raise DomainError("eta must be positive")
    sopts = sopts or SeriesOptions()
    bob = FtrSeries(ftr_b, sopts)
    eve = FtrSeries(ftr_e, sopts)
    a = 1.0 / (2.0 * beta1 * beta1 * ftr_b.sigma2)
    b = 1.0 / (2.0 * gains.mu * ftr_e.sigma2)
    return _Links(bob, eve, a, b, gains.tau, beta1, gains)


def _bob_coeffs(lk: _Links):
    """``log(w_B / (j_B! theta_B^{j_B+1}))``."""
    j = np.arange(lk.bob.n_terms, dtype=float)
    return lk.bob.log_w - gammaln(j + 1.0) + (j + 1.0) * math.log(lk.a)


def _eve_coeffs(lk: _Links):
    """``log(w_E tau / (j_E! theta_E^{j_E+1}))``."""
    j = np.arange(lk.eve.n_terms, dtype=float)
    return lk.eve.log_w + math.log(lk.tau) - gammaln(j + 1.0) + (j + 1.0) * math.log(lk.b)


def _log_chi_vector(lk: _Links):
    jb = np.arange(lk.bob.n_terms, dtype=float)
    return _psi_tables.log_psi_table(1, lk.a, 0.0, lk.tau, jb, np.zeros_like(jb))


def _log_s_vector(lk: _Links):
    return np.array([log_s_closed(j + 1, lk.a) for j in range(lk.bob.n_terms)])


def _shell(mat):
    """Magnitude of the last row and column of a contribution matrix."""
    return float(np.abs(mat[-1, :]).sum() + np.abs(mat[:-1, -1]).sum())


# ---------------------------------------------------------------------------
# average secrecy rate
# ---------------------------------------------------------------------------


def _i1_terms(lk: _Links, log_chi, log_s):
    """Contribution matrix of I1 over (j_B, j_E) and the beyond-tau part."""
    jb_n, je_n = lk.bob.n_terms, lk.eve.n_terms
    cb = _bob_coeffs(lk)
    jb = np.arange(jb_n, dtype=float)[:, None]
    n = np.arange(je_n, dtype=float)[None, :]
    log_psi = _psi_tables.log_psi_table(1, lk.a, lk.b, lk.tau, jb + n, np.broadcast_to(n, (jb_n, je_n)))
    g = np.exp(cb[:, None] + n * math.log(lk.b) - gammaln(n + 1.0) + log_psi)
    inner = np.cumsum(g, axis=1)  # sum over n <= j_E
    w_e = np.exp(lk.eve.log_w)
    chi_s = np.exp(cb + log_chi)
    below = w_e[None, :] * (chi_s[:, None] - inner)
    beyond = np.exp(cb + log_s) - chi_s
    return below, beyond


def _i2_i3_terms(lk: _Links):
    jb_n, je_n = lk.bob.n_terms, lk.eve.n_terms
    ce = _eve_coeffs(lk)
    je = np.arange(je_n, dtype=float)[:, None]
    n = np.arange(jb_n, dtype=float)[None, :]
    log_psi0 = _psi_tables.log_psi_table(1, 0.0, lk.b, lk.tau, je[:, 0], je[:, 0] + 2.0)
    log_psi = _psi_tables.log_psi_table(1, lk.a, lk.b, lk.tau, je + n, np.broadcast_to(je + 2.0, (je_n, jb_n)))
    h = np.exp(ce[:, None] + n * math.log(lk.a) - gammaln(n + 1.0) + log_psi)
    inner = np.cumsum(h, axis=1)  # sum over n <= j_B
    head = np.exp(ce + log_psi0)
    w_b = np.exp(lk.bob.log_w)
    i2 = w_b[None, :] * (head[:, None] - inner)  # (j_E, j_B)
    return i2, head


def avg_secrecy_rate(ftr_b: FtrParams, ftr_e: FtrParams, beta1: float, gains: EveGains,
                     opts: SeriesOptions | None = None) -> SecrecyResult:
    """Average secrecy rate ``I1 + I2 - I3`` in bits/s/Hz.

    Parameters
    ----------
    ftr_b, ftr_e : FtrParams
        Fading of ``lambda_B`` and ``lambda_E``; ``sigma2`` sets the mean SNR.
    beta1 : float
        Useful-signal power fraction.
    gains : EveGains
        Eve's effective gains; ``mu`` must be positive.
    opts : SeriesOptions, optional
        Truncation of the ``j_B`` and ``j_E`` series.
    """
    lk = _links(ftr_b, ftr_e, beta1, gains, opts)
    log_chi = _log_chi_vector(lk)
    log_s = _log_s_vector(lk)
    below, beyond = _i1_terms(lk, log_chi, log_s)
    i2_terms, i3_terms = _i2_i3_terms(lk)
    i1 = (below.sum() + beyond.sum()) / LN2
    i2 = i2_terms.sum() / LN2
    i3 = i3_terms.sum() / LN2
    bound = (_shell(below) + abs(beyond[-1]) + _shell(i2_terms) + abs(i3_terms[-1])) / LN2
    value = i1 + i2 - i3
    if value < -max(1e-8, bound):
        raise NumericalError(f"average secrecy rate evaluated negative ({value:.3g})")
    return SecrecyResult(float(value), float(i1), float(i2), float(i3), float(bound))


def sr_lower_bound(ftr_b: FtrParams, beta1: float, tau: float,
                   opts: SeriesOptions | None = None) -> float:
    """Lower bound ``E[(log2(1+gamma_B) - log2(1+tau)) 1{gamma_B > tau}]``.

    Evaluated as the ``j_B`` series of ``S(j_B+1, a) - chi`` minus
    ``log2(1+tau) (1 - F_{gamma_B}(tau))``. Not clipped at zero.
    """
    _check_beta1(beta1)
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError("tau must be finite and positive")
    bob = FtrSeries(ftr_b, opts or SeriesOptions())
    a = 1.0 / (2.0 * beta1 * beta1 * ftr_b.sigma2)
    j = np.arange(bob.n_terms, dtype=float)
    cb = bob.log_w - gammaln(j + 1.0) + (j + 1.0) * math.log(a)
    log_chi = _psi_tables.log_psi_table(1, a, 0.0, tau, j, np.zeros_like(j))
    log_s = np.array([log_s_closed(int(k) + 1, a) for k in j])
    head = np.sum(np.exp(cb + log_s) - np.exp(cb + log_chi)) / LN2
    tail = 1.0 - float(bob.cdf(tau / (beta1 * beta1)))
    return float(head - math.log2(1.0 + tau) * tail)


# ---------------------------------------------------------------------------
# secrecy outage
# ---------------------------------------------------------------------------


def sop(ftr_b: FtrParams, ftr_e: FtrParams, beta1: float, gains: EveGains, r0: float,
        opts: SeriesOptions | None = None) -> SecrecyResult:
    """Secrecy outage probability ``P(log2((1+gamma_B)/(1+gamma_E)) < r0)``.

    With ``c1 = 2^{r0} a`` and ``c0 = (2^{r0}-1) a`` the Bob CDF at
    ``2^{r0}(1+y) - 1`` expands into ``sum_k (c1 y)^k/k! Q_{j_B-k}(c0)``,
    ``Q_i`` the regularized upper incomplete gamma of order ``i+1``; each
    power of ``y`` pairs with one ``Psi(0, j_E+k, j_E+2, c1, b, tau)``.
    """
    if not r0 >= 0:
        raise ArgumentError("r0 must be non-negative")
    lk = _links(ftr_b, ftr_e, beta1, gains, opts)
    jb_n, je_n = lk.bob.n_terms, lk.eve.n_terms
    scale = 2.0**r0
    c1 = scale * lk.a
    c0 = (scale - 1.0) * lk.a
    ce = _eve_coeffs(lk)
    je = np.arange(je_n, dtype=float)[:, None]
    k = np.arange(jb_n, dtype=float)[None, :]
    log_psi0 = _psi_tables.log_psi_table(0, 0.0, lk.b, lk.tau, je[:, 0], je[:, 0] + 2.0)
    log_psi = _psi_tables.log_psi_table(0, c1, lk.b, lk.tau, je + k, np.broadcast_to(je + 2.0, (je_n, jb_n)))
    r = np.exp(ce[:, None] + k * math.log(c1) - gammaln(k + 1.0) + log_psi)  # (j_E, k)
    idx = np.arange(jb_n)
    lag = idx[:, None] - idx[None, :]
    q_lag = gammaincc(np.arange(jb_n) + 1.0, c0) if c0 > 0 else np.ones(jb_n)
    toeplitz = np.where(lag >= 0, q_lag[np.clip(lag, 0, None)], 0.0)  # (j_B, k)
    inner = r @ toeplitz.T  # (j_E, j_B)
    head = np.exp(ce + log_psi0)
    w_b = np.exp(lk.bob.log_w)
    terms = w_b[None, :] * (head[:, None] - inner)
    value = float(terms.sum())
    bound = _shell(terms)
    tol = max(1e-8, 10.0 * bound)
    if not -tol <= value <= 1.0 + tol:
        raise NumericalError(f"SOP evaluated outside [0, 1] ({value:.6g})")
    return SecrecyResult(
        min(max(value, 0.0), 1.0),
        i1=float(head.sum() * w_b.sum()),
        i2=float((w_b[None, :] * inner).sum()),
        truncation_error_bound=bound,
    )


def sop_upper_bound(ftr_b: FtrParams, beta1: float, tau: float, r0: float,
                    opts: SeriesOptions | None = None) -> float:
    """``F_{gamma_B}(2^{r0}(1+tau) - 1)``."""
    _check_beta1(beta1)
    if not r0 >= 0:
        raise ArgumentError("r0 must be non-negative")
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError("tau must be finite and positive")
    bob = FtrSeries(ftr_b, opts or SeriesOptions())
    x = 2.0**r0 * (1.0 + tau) - 1.0
    return float(bob.cdf(x / (beta1 * beta1)))


# ---------------------------------------------------------------------------
# direct quadrature of the defining integrals
# ---------------------------------------------------------------------------


class _Densities:
    """Scalar pdf/cdf of gamma_B and gamma_E built once for quadrature."""

    def __init__(self, ftr_b, ftr_e, beta1, gains, sopts):
        _check_beta1(beta1)
        sopts = sopts or SeriesOptions()
        self.bob = FtrSeries(ftr_b, sopts)
        self.eve = FtrSeries(ftr_e, sopts)
        self.b2 = beta1 * beta1
        self.gains = gains

    def f_b(self, x):
        return float(self.bob.pdf(np.array([x / self.b2]))[0]) / self.b2

    def cdf_b(self, x):
        return float(self.bob.cdf(np.array([max(x, 0.0) / self.b2]))[0])

    def f_e(self, x):
        g = self.gains
        if g.degenerate:
            return float(self.eve.pdf(np.array([x / g.eta]))[0]) / g.eta
        if x >= g.tau:
            return 0.0
        den = g.eta - g.mu * x
        return g.eta / den**2 * float(self.eve.pdf(np.array([x / den]))[0])

    def cdf_e(self, x):
        g = self.gains
        if g.degenerate:
            return float(self.eve.cdf(np.array([x / g.eta]))[0])
        if x >= g.tau:
            return 1.0
        return float(self.eve.cdf(np.array([x / (g.eta - g.mu * x)]))[0])

    def upper_e(self):
        """Right end of Eve's support, or a far quantile when unbounded."""
        g = self.gains
        if not g.degenerate:
            return g.tau
        return g.eta * _far_quantile(self.eve)


def _far_quantile(series: FtrSeries):
    # mean plus many standard deviations of the Gamma mixture
    w = np.exp(series.log_w)
    j = np.arange(series.n_terms)
    mean = float((w * (j + 1)).sum()) * series.scale
    return 60.0 * mean + 200.0 * series.scale


def _quad(f, lo, hi, qopts, points=None):
    val, err = integrate.quad(f, lo, hi, epsabs=1e-13, epsrel=qopts.rel_tol,
                              limit=max(qopts.max_subdivisions, 500), points=points)[:2]
    return val


def _quad_inf(f, lo, scale, qopts):
    """Integral over ``[lo, inf)`` split at a few multiples of ``scale``."""
    edges = [lo] + [lo + scale * k for k in (1, 4, 16, 64)]
    total = sum(_quad(f, edges[i], edges[i + 1], qopts) for i in range(len(edges) - 1))
    return total + integrate.quad(f, edges[-1], np.inf, epsabs=1e-14, limit=500)[0]


def secrecy_integrals_quadrature(ftr_b, ftr_e, beta1, gains, sopts=None,
                                 qopts: QuadratureOptions = QuadratureOptions()) -> SecrecyResult:
    """``I1, I2, I3`` by direct one-dimensional quadrature.

    ``I1 = int ln(1+x) f_B F_E``, ``I2 = int ln(1+x) f_E F_B``,
    ``I3 = int ln(1+x) f_E`` (all divided by ``ln 2``). Works for
    ``mu = 0`` as well, where Eve's support is unbounded.
    """
    d = _Densities(ftr_b, ftr_e, beta1, gains, sopts)
    scale_b = _far_quantile(d.bob) * d.b2 / 60.0
    i1 = _quad_inf(lambda x: math.log1p(x) * d.f_b(x) * d.cdf_e(x), 0.0, scale_b, qopts)
    hi = d.upper_e()
    if gains.degenerate:
        scale_e = hi / 60.0
        i2 = _quad_inf(lambda x: math.log1p(x) * d.f_e(x) * d.cdf_b(x), 0.0, scale_e, qopts)
        i3 = _quad_inf(lambda x: math.log1p(x) * d.f_e(x), 0.0, scale_e, qopts)
    else:
        pts = [hi * f for f in (0.5, 0.9, 0.99)]
        i2 = _quad(lambda x: math.log1p(x) * d.f_e(x) * d.cdf_b(x), 0.0, hi, qopts, pts)
        i3 = _quad(lambda x: math.log1p(x) * d.f_e(x), 0.0, hi, qopts, pts)
    i1, i2, i3 = i1 / LN2, i2 / LN2, i3 / LN2
    return SecrecyResult(i1 + i2 - i3, i1, i2, i3)


def sop_quadrature(ftr_b, ftr_e, beta1, gains, r0, sopts=None,
                   qopts: QuadratureOptions = QuadratureOptions()) -> float:
    """``int f_E(y) F_B(2^{r0}(1+y) - 1) dy`` by direct quadrature."""
    if not r0 >= 0:
        raise ArgumentError("r0 must be non-negative")
    d = _Densities(ftr_b, ftr_e, beta1, gains, sopts)
    scale = 2.0**r0

    def f(y):
        return d.f_e(y) * d.cdf_b(scale * (1.0 + y) - 1.0)

    hi = d.upper_e()
    if gains.degenerate:
        return float(min(1.0, _quad_inf(f, 0.0, hi / 60.0, qopts)))
    return float(_quad(f, 0.0, hi, qopts, [hi * k for k in (0.5, 0.9, 0.99)]))


def secrecy_rate(ftr_b, ftr_e, beta1, gains, opts=None) -> SecrecyResult:
    """Series value when ``mu > 0``; direct quadrature (no-AN law) otherwise."""
    if gains.degenerate:
        warnings.warn("AN does not reach Eve; secrecy rate from the no-AN law", stacklevel=2)
        return secrecy_integrals_quadrature(ftr_b, ftr_e, beta1, gains, opts)
    return avg_secrecy_rate(ftr_b, ftr_e, beta1, gains, opts)


def outage(ftr_b, ftr_e, beta1, gains, r0, opts=None) -> SecrecyResult:
    """Series SOP when ``mu > 0``; direct quadrature (no-AN law) otherwise."""
    if gains.degenerate:
        warnings.warn("AN does not reach Eve; SOP from the no-AN law", stacklevel=2)
        return SecrecyResult(sop_quadrature(ftr_b, ftr_e, beta1, gains, r0, opts))
    return sop(ftr_b, ftr_e, beta1, gains, r0, opts)
