"""
Transmit/receive model and the SNR/SINR laws of Bob and Eve.

Bob sees ``y_B = eps_B h_B^H x + xi_B``; the AN is orthogonal to ``h_B`` so
``gamma_B = beta1^2 lambda_B``. Eve sees the useful signal attenuated by
``rho1 = h_E^H p1`` plus AN leakage, which yields

    gamma_E = eta lambda_E / (mu lambda_E + 1),   eta = beta1^2 |rho1|^2,
    mu = alpha^2 beta2^2 |rho2|^2,

bounded above by ``tau = eta / mu``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from . import ftr_channel as ftr
from .array_geometry import ArrayConfig, Position, steering_vector
from .errors import ArgumentError, DomainError
from .precoder import Method, PowerSplit, PrecoderSet

MU_FLOOR = 1e-12


@dataclass(frozen=True)
class LinkBudget:
    """Transmit power, receiver noise variances and power split (linear)."""

    ps: float = 1.0
    noise_var_b: float = 1.0
    noise_var_e: float = 1.0
    split: PowerSplit = PowerSplit.from_beta1(0.9)

    def __post_init__(self):
        if not (self.ps > 0 and self.noise_var_b > 0 and self.noise_var_e > 0):
            raise ArgumentError("ps and noise variances must be positive")


@dataclass(frozen=True)
class EveGains:
    """Eve's effective gains. ``tau`` is ``inf`` when ``mu`` vanishes."""

    rho1: complex
    rho2: complex
    eta: float
    mu: float

    @property
    def tau(self) -> float:
        if self.mu < MU_FLOOR:
            return math.inf
        return self.eta / self.mu

    @property
    def degenerate(self) -> bool:
        """True when AN does not reach Eve (``mu < 1e-12``)."""
        return self.mu < MU_FLOOR


def _as_rows(a, width):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1 and width == 1:
        a = a[:, None]
    return a


def an_unit_components(pre: PrecoderSet, z):
    """Transmitted AN directions before the ``beta2 sqrt(Ps)`` factor.

    SP returns ``alpha p2 z`` (power ``|z|^2``); ZF/SVD return
    ``B z / ||B z||`` (unit power per draw). ``z`` has shape ``(W,)`` or
    ``(T, W)``; SP also accepts a scalar or ``(T,)``.
    """
    if pre.method is Method.NoAN:
        raise ArgumentError("NoAN precoder carries no AN")
    z = np.asarray(z, dtype=complex)
    if pre.method is Method.SP:
        if z.ndim == 2 and z.shape[1] != 1:
            raise ArgumentError("SP AN draw must be scalar per symbol")
        zz = z.reshape(z.shape[0]) if z.ndim == 2 else z
        return pre.alpha * np.multiply.outer(zz, pre.p2)
    if z.shape[-1] != pre.width:
        raise ArgumentError(f"AN draw width {z.shape[-1]} does not match basis width {pre.width}")
    v = z @ pre.an_basis.T
    nrm = np.linalg.norm(v, axis=-1, keepdims=True)
    return v / nrm


def transmit_vector(pre: PrecoderSet, split: PowerSplit, ps: float, s, z=None):
    """Transmit vector ``beta1 sqrt(Ps) p1 s + beta2 sqrt(Ps) * AN``.

    Parameters
    ----------
    s : complex or array of shape (T,)
        Unit-energy symbols.
    z : array, optional
        AN draws (see :func:`an_unit_components`); ignored for NoAN.

    Returns
    -------
    ndarray
        Shape ``(dim,)`` for scalar ``s`` or ``(T, dim)``.
    """
    s = np.asarray(s, dtype=complex)
    x = split.beta1 * math.sqrt(ps) * np.multiply.outer(s, pre.p1)
    if pre.method is Method.NoAN or split.beta2 == 0.0:
        return x
    if z is None:
        raise ArgumentError(f"{pre.method.value} requires an AN draw")
    an = an_unit_components(pre, z)
    if an.shape != x.shape:
        raise ArgumentError(f"AN shape {an.shape} does not match signal shape {x.shape}")
    return x + split.beta2 * math.sqrt(ps) * an


def receive(h, x, epsilon=1.0, xi=0.0):
    """``y = eps h^H x + xi`` for one vector ``x`` or a batch of rows."""
    h = np.asarray(h, dtype=complex)
    return epsilon * (np.asarray(x) @ h.conj()) + xi


def receive_at(cfg: ArrayConfig, pos: Position, x, epsilon=1.0, xi=0.0, t: float = 0.0):
    """:func:`receive` with the steering vector of ``pos``."""
    return receive(steering_vector(cfg, pos, t), x, epsilon, xi)


def eve_gains(h_e, pre: PrecoderSet, split: PowerSplit) -> EveGains:
    """Eve's gains for a designed precoder.

    For ZF/SVD the analytic ``mu`` is the expected normalized AN leakage
    ``beta2^2 ||h_E^H B||^2 / ||B||_F^2`` and ``rho2`` is its RMS amplitude.
    """
    h_e = np.asarray(h_e, dtype=complex)
    if h_e.shape != pre.p1.shape:
        raise ArgumentError("h_e and precoder dimensions differ")
    rho1 = complex(np.vdot(h_e, pre.p1))
    eta = split.beta1**2 * abs(rho1) ** 2
    if pre.method is Method.NoAN or split.beta2 == 0.0:
        return EveGains(rho1, 0j, eta, 0.0)
    if pre.method is Method.SP:
        rho2 = complex(np.vdot(h_e, pre.p2))
        mu = pre.alpha**2 * split.beta2**2 * abs(rho2) ** 2
        return EveGains(rho1, rho2, eta, mu)
    leak = float(np.sum(np.abs(h_e.conj() @ pre.an_basis) ** 2))
    frob = float(np.sum(np.abs(pre.an_basis) ** 2))
    rms = leak / frob
    return EveGains(rho1, complex(math.sqrt(rms)), eta, split.beta2**2 * rms)


# ---------------------------------------------------------------------------
# SNR/SINR laws
# ---------------------------------------------------------------------------


def _check_beta1(beta1):
    if not beta1 > 0:
        raise DomainError("beta1 = 0 leaves Bob without signal")


def _nonneg(x):
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise DomainError("SNR arguments must be non-negative")
    return x


def gamma_b_pdf(x, ftr_b: ftr.FtrParams, beta1: float, opts=None):
    """Density of ``gamma_B = beta1^2 lambda_B``."""
    _check_beta1(beta1)
    x = _nonneg(x)
    b2 = beta1 * beta1
    return ftr.snr_pdf(x / b2, ftr_b, opts) / b2


def gamma_b_cdf(x, ftr_b: ftr.FtrParams, beta1: float, opts=None):
    """Distribution function of ``gamma_B``."""
    _check_beta1(beta1)
    x = _nonneg(x)
    return ftr.snr_cdf(x / (beta1 * beta1), ftr_b, opts)


def _noan_warning():
    warnings.warn("AN does not reach Eve (mu ~ 0); using the no-AN law, tau = inf", stacklevel=3)


def gamma_e_cdf(x, ftr_e: ftr.FtrParams, gains: EveGains, opts=None):
    """Distribution function of ``gamma_E``; equals 1 for ``x >= tau``."""
    x = _nonneg(x)
    if gains.eta <= 0:
        return np.ones_like(x)
    if gains.degenerate:
        _noan_warning()
        return ftr.snr_cdf(x / gains.eta, ftr_e, opts)
    inside = x < gains.tau
    arg = np.where(inside, x, 0.0) / (gains.eta - gains.mu * np.where(inside, x, 0.0))
    return np.where(inside, ftr.snr_cdf(arg, ftr_e, opts), 1.0)


def gamma_e_pdf(x, ftr_e: ftr.FtrParams, gains: EveGains, opts=None):
    """Density of ``gamma_E`` on ``(0, tau)``; zero beyond."""
    x = _nonneg(x)
    if gains.eta <= 0:
        raise DomainError("eta = 0: gamma_E is a point mass at 0")
    if gains.degenerate:
        _noan_warning()
        return ftr.snr_pdf(x / gains.eta, ftr_e, opts) / gains.eta
    inside = x < gains.tau
    xi = np.where(inside, x, 0.0)
    den = gains.eta - gains.mu * xi
    val = gains.eta / den**2 * ftr.snr_pdf(xi / den, ftr_e, opts)
    return np.where(inside, val, 0.0)


def gamma_e_from_lambda(lam, gains: EveGains):
    """Map Eve's faded SNR samples to SINR, ``eta lam / (mu lam + 1)``."""
    lam = np.asarray(lam, dtype=float)
    return gains.eta * lam / (gains.mu * lam + 1.0)
