"""
Fluctuating two-ray (FTR) fading.

The fading coefficient is

    eps = sqrt(zeta) U e^{i phi} + sqrt(zeta) V e^{i vartheta} + X + iY

with ``zeta ~ Gamma(m, 1/m)`` (unit mean), independent uniform phases and
``X, Y ~ N(0, sigma2)``. The faded SNR ``lambda = |eps|^2 Ps / delta^2``
is a Poisson-weighted mixture of Gamma(j+1, 2 sigma2) laws; the mixture
weights are ``m^m / Gamma(m) * K^j d_j / j!``. ``d_j`` has a closed form as
a double sum of associated Legendre functions whose terms alternate in sign;
it is evaluated here through an equivalent one-dimensional angular integral
with a positive integrand, and the Legendre form is kept for cross-checks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.special import comb, gammaln, hyp2f1

from . import kernels
from .errors import ArgumentError, ConvergenceError, DomainError, NumericalError

DELTA_LIMIT = 1.0 - 1e-9
IMAG_TOL = 1e-9


@dataclass(frozen=True)
class FtrParams:
    """Fading severity ``m``, specular ratio ``K``, ray balance ``delta`` and
    diffuse per-dimension variance ``sigma2``."""

    m: float
    K: float
    delta: float
    sigma2: float = 0.5

    def __post_init__(self):
        if not self.m > 0:
            raise ArgumentError(f"m must be positive, got {self.m}")
        if not self.K >= 0:
            raise ArgumentError(f"K must be non-negative, got {self.K}")
        if not 0.0 <= self.delta <= 1.0:
            raise ArgumentError(f"delta must lie in [0, 1], got {self.delta}")
        if not self.sigma2 > 0:
            raise ArgumentError(f"sigma2 must be positive, got {self.sigma2}")

    @property
    def mean_power(self) -> float:
        """``E|eps|^2 = 2 sigma2 (1 + K)``."""
        return 2.0 * self.sigma2 * (1.0 + self.K)

    def with_sigma2(self, sigma2: float) -> "FtrParams":
        return FtrParams(self.m, self.K, self.delta, sigma2)


@dataclass(frozen=True)
class SpecularAmplitudes:
    u: float
    v: float


@dataclass(frozen=True)
class SeriesOptions:
    """Truncation of the infinite ``j`` sums.

    Summation stops once three consecutive weights fall below
    ``rel_tol`` times the running total, and fails past ``max_terms``.
    """

    max_terms: int = 400
    rel_tol: float = 1e-10

    def __post_init__(self):
        if self.max_terms < 1:
            raise ArgumentError("max_terms must be >= 1")
        if not self.rel_tol > 0:
            raise ArgumentError("rel_tol must be positive")


def specular_amplitudes(p: FtrParams) -> SpecularAmplitudes:
    """Invert ``K = (U^2+V^2)/(2 sigma2)`` and ``delta = 2UV/(U^2+V^2)``."""
    root = math.sqrt(max(0.0, 1.0 - p.delta * p.delta))
    u2 = p.sigma2 * p.K * (1.0 + root)
    v2 = p.sigma2 * p.K * (1.0 - root)
    return SpecularAmplitudes(math.sqrt(u2), math.sqrt(max(0.0, v2)))


def sample_coefficient(p: FtrParams, rng: np.random.Generator, size=None):
    """Draw fading coefficients ``eps`` (complex)."""
    amp = specular_amplitudes(p)
    zeta = rng.gamma(shape=p.m, scale=1.0 / p.m, size=size)
    phi = rng.uniform(0.0, 2.0 * np.pi, size=size)
    vartheta = rng.uniform(0.0, 2.0 * np.pi, size=size)
    sd = math.sqrt(p.sigma2)
    x = rng.normal(0.0, sd, size=size)
    y = rng.normal(0.0, sd, size=size)
    root = np.sqrt(zeta)
    return root * amp.u * np.exp(1j * phi) + root * amp.v * np.exp(1j * vartheta) + x + 1j * y


def sample_snr(p: FtrParams, rng, size, ps=1.0, noise_var=1.0):
    """Draw ``lambda = |eps|^2 Ps / delta^2``."""
    eps = sample_coefficient(p, rng, size)
    return (eps.real**2 + eps.imag**2) * (ps / noise_var)


def sigma_from_avg_snr(avg_snr: float, K: float, ps: float = 1.0, noise_var: float = 1.0) -> float:
    """Diffuse variance giving mean SNR ``avg_snr`` (linear)."""
    if not (avg_snr > 0 and ps > 0 and noise_var > 0 and K >= 0):
        raise ArgumentError("avg_snr, ps, noise_var must be positive and K >= 0")
    return avg_snr * noise_var / (2.0 * (1.0 + K) * ps)


# ---------------------------------------------------------------------------
# associated Legendre function and d_j
# ---------------------------------------------------------------------------


def legendre_p(nu: float, mu: int, z: float) -> complex:
    """Associated Legendre function of the first kind for ``z > 1``.

    Uses the Ferrers normalization carried onto ``z > 1`` from the upper side
    of the cut, ``P = exp(-i mu pi / 2) * P_III``, where ``P_III`` is the
    hypergeometric form

        P_III^{-a}(z) = ((z-1)/(z+1))^{a/2} / Gamma(1+a) * 2F1(-nu, nu+1; 1+a; (1-z)/2)

    and positive integer orders use ``P^a = Gamma(nu+a+1)/Gamma(nu-a+1) P^{-a}``.
    This normalization is the one under which the ``d_j`` double sum is real.
    """
    return complex(np.exp(_log_legendre_mag(nu, abs(int(mu)), z, int(mu) > 0)) * _phase(-mu))


def _phase(quarter_turns) -> complex:
    return complex(np.exp(0.5j * np.pi * quarter_turns))


def _log_legendre_mag(nu, a, z, positive_order):
    a = np.asarray(a)
    f = hyp2f1(-nu, nu + 1.0, 1.0 + a, 0.5 * (1.0 - z))
    out = 0.5 * a * math.log((z - 1.0) / (z + 1.0)) - gammaln(1.0 + a) + np.log(f)
    if positive_order:
        out = out + gammaln(nu + a + 1.0) - gammaln(nu - a + 1.0)
    return out


def _legendre_argument(p: FtrParams):
    delta = p.delta
    if delta >= 1.0 - 1e-12:
        warnings.warn("delta = 1 evaluated at 1 - 1e-9 (Legendre argument limit)", stacklevel=3)
        delta = DELTA_LIMIT
    s = (p.m + p.K) ** 2 - (p.K * delta) ** 2
    return delta, s, (p.m + p.K) / math.sqrt(s)


def log_d_coefficient_legendre(j: int, p: FtrParams) -> float:
    """``log d_j`` from the associated Legendre double sum.

    The summands alternate in sign, so relative accuracy decays with ``j``;
    past a few dozen terms the result is dominated by cancellation and a
    :class:`NumericalError` is raised when the sum is no longer positive.
    Use :func:`log_d_coefficient` for production values.
    """
    j = _check_index(j)
    delta, s, z = _legendre_argument(p)
    nu = j + p.m - 1.0
    if z == 1.0:
        # delta == 0 or K == 0: P_nu^0(1) = 1 and every k > 0 term vanishes
        return float(gammaln(j + p.m) - 0.5 * (j + p.m) * math.log(s))
    a = np.arange(j + 1)
    # log |Gamma(j+m-mu) P^{mu}| for mu = -a (non-positive orders)
    log_neg = gammaln(j + p.m + a) + _log_legendre_mag(nu, a, z, False)
    # same quantity for mu = +a via the reflection formula
    log_pos = gammaln(j + p.m - a) + _log_legendre_mag(nu, a, z, True)

    terms = []
    logs = []
    lhalf = math.log(delta / 2.0)
    for k in range(j + 1):
        ck = math.log(comb(j, k, exact=False)) + k * lhalf
        for l in range(k + 1):
            mu = k - 2 * l
            mag = log_pos[mu] if mu > 0 else log_neg[-mu]
            logs.append(ck + math.log(comb(k, l, exact=False)) + mag)
            # e^{i pi (2l-k)/2} from the sum times e^{-i pi mu/2} of the Legendre factor
            terms.append(_phase(2 * l - k) * _phase(-mu))
    logs = np.asarray(logs)
    ref = logs.max()
    total = np.sum(np.asarray(terms) * np.exp(logs - ref))
    if abs(total.imag) > IMAG_TOL * max(abs(total.real), 1e-300):
        raise NumericalError(f"d_{j}: imaginary residual {abs(total.imag / total.real):.3g}")
    if not total.real > 0:
        raise NumericalError(f"d_{j} lost to cancellation in the Legendre sum")
    return float(ref + math.log(total.real) - 0.5 * (j + p.m) * math.log(s))


def _check_index(j):
    if j < 0 or int(j) != j:
        raise ArgumentError("j must be a non-negative integer")
    return int(j)


def _log_d_trapezoid(js, p: FtrParams, tol=1e-12):
    """``log d_j`` for an array of ``j`` from the angular integral

        d_j = Gamma(j+m)/pi * int_0^pi (1 + delta cos a)^j (m + K + K delta cos a)^{-(j+m)} da

    using the periodic trapezoid rule (spectrally convergent, positive
    integrand) with node doubling until successive estimates agree."""
    js = np.asarray(js, dtype=float)
    delta = min(p.delta, DELTA_LIMIT)
    big_a = p.m + p.K
    big_b = p.K * delta
    prev = None
    nodes = 64
    while nodes <= 1 << 16:
        alpha = np.linspace(0.0, np.pi, nodes + 1)
        c = np.cos(alpha)
        wlog = np.full(nodes + 1, -math.log(nodes))
        wlog[[0, -1]] -= math.log(2.0)
        lf = (js[:, None] * np.log1p(delta * c)[None, :]
              - (js[:, None] + p.m) * np.log(big_a + big_b * c)[None, :] + wlog[None, :])
        mx = lf.max(axis=1)
        cur = mx + np.log(np.exp(lf - mx[:, None]).sum(axis=1))
        if prev is not None and np.max(np.abs(cur - prev)) < tol:
            return gammaln(js + p.m) + cur
        prev = cur
        nodes *= 2
    raise ConvergenceError("angular quadrature for d_j did not converge", estimate=None)


def log_d_coefficient(j: int, p: FtrParams) -> float:
    """``log d_j``, evaluated stably for any ``j`` through its angular
    integral representation."""
    j = _check_index(j)
    if p.delta >= 1.0 - 1e-12:
        warnings.warn("delta = 1 evaluated at 1 - 1e-9 (Legendre argument limit)", stacklevel=2)
    return float(_log_d_trapezoid([j], p)[0])


def d_coefficient(j: int, p: FtrParams, method: str = "integral") -> float:
    """FTR series coefficient ``d_j`` (depends on ``m, K, delta`` only).

    Parameters
    ----------
    method : {"integral", "legendre"}
        ``"integral"`` (default) is accurate for every ``j``; ``"legendre"``
        evaluates the associated Legendre double sum in complex arithmetic
        and is reliable only for small ``j``.
    """
    if method == "integral":
        return math.exp(log_d_coefficient(j, p))
    if method == "legendre":
        return math.exp(log_d_coefficient_legendre(j, p))
    raise ArgumentError(f"unknown d_j method {method!r}")


@lru_cache(maxsize=64)
def _log_weights_cached(m, K, delta, max_terms, rel_tol):
    p = FtrParams(m, K, delta)
    if K == 0.0:
        return np.zeros(1), 0.0
    if delta >= 1.0 - 1e-12:
        warnings.warn("delta = 1 evaluated at 1 - 1e-9 (Legendre argument limit)", stacklevel=4)
    j = np.arange(max_terms, dtype=float)
    lw = (m * math.log(m) - gammaln(m) + j * math.log(K) - gammaln(j + 1.0)
          + _log_d_trapezoid(j, p))
    w = np.exp(lw)
    total = np.cumsum(w)
    small = w < rel_tol * total
    run = np.convolve(small.astype(int), np.ones(3, dtype=int), mode="valid")
    hit = np.flatnonzero(run == 3)
    if hit.size == 0:
        raise ConvergenceError(
            f"FTR series not converged in {max_terms} terms (m={m}, K={K}, delta={delta})",
            estimate=float(total[-1]),
            last_term=float(w[-1]),
        )
    stop = hit[0] + 3
    return lw[:stop], float(w[stop - 1])


def log_series_weights(p: FtrParams, opts: SeriesOptions = SeriesOptions()):
    """Log mixture weights ``log(m^m/Gamma(m) K^j d_j / j!)`` for ``j < J``
    and the magnitude of the last included weight."""
    lw, last = _log_weights_cached(float(p.m), float(p.K), float(p.delta), opts.max_terms, opts.rel_tol)
    return lw.copy(), last


@dataclass(frozen=True)
class FtrSeries:
    """Truncated series representation of ``lambda`` for one parameter set."""

    params: FtrParams
    opts: SeriesOptions = SeriesOptions()
    log_w: np.ndarray = field(init=False, repr=False)
    last_term: float = field(init=False)

    def __post_init__(self):
        lw, last = log_series_weights(self.params, self.opts)
        object.__setattr__(self, "log_w", lw)
        object.__setattr__(self, "last_term", last)

    @property
    def n_terms(self) -> int:
        return self.log_w.shape[0]

    @property
    def scale(self) -> float:
        """Gamma scale ``2 sigma2`` of every mixture component."""
        return 2.0 * self.params.sigma2

    def normalization(self) -> float:
        return float(np.exp(self.log_w).sum())

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        pdf, _ = kernels.gamma_mixture(np.atleast_1d(x).ravel() / self.scale, self.log_w)
        return (pdf / self.scale).reshape(x.shape)

    def cdf(self, x):
        x = np.asarray(x, dtype=float)
        _, cdf = kernels.gamma_mixture(np.atleast_1d(x).ravel() / self.scale, self.log_w)
        return np.clip(cdf, 0.0, 1.0).reshape(x.shape)


def _series(p, opts):
    return FtrSeries(p, opts or SeriesOptions())


def snr_pdf(x, p: FtrParams, opts: SeriesOptions | None = None):
    """Density of ``lambda`` (diffuse variance ``p.sigma2``)."""
    if np.any(np.asarray(x) < 0):
        raise DomainError("SNR must be non-negative")
    return _series(p, opts).pdf(x)


def snr_cdf(x, p: FtrParams, opts: SeriesOptions | None = None):
    """Distribution function of ``lambda``."""
    if np.any(np.asarray(x) < 0):
        raise DomainError("SNR must be non-negative")
    return _series(p, opts).cdf(x)
