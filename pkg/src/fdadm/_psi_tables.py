"""
Batched evaluation of families of integrals

    Psi(v1, p, q, v4, v5, tau) = int_0^tau ln^{v1}(1+t) t^p (tau-t)^{-q}
                                 exp(-v4 t - v5 t/(tau-t)) dt

that share ``(v1, v4, v5, tau)`` and differ in ``(p, q)``.

With ``u = t/(tau-t) = e^s`` the interval maps to the real line and the
integrand becomes smooth and unimodal in ``s``. A composite Gauss-Legendre
rule on a fixed ``s`` grid then serves every ``(p, q)`` pair at once; the
per-pair log-sum-exp runs in :func:`fdadm.kernels.log_psi_pairs`.
"""

from __future__ import annotations

import math

import numpy as np

from . import kernels
from .errors import DomainError


def _s_range(v4, v5, tau, q_max):
    # below the peak the integrand decays at least like e^{s}; 45 e-folds
    # puts the neglected head far below double precision
    t_scale = min(0.5, 1.0 / (v4 * tau + v5)) if (v4 * tau + v5) > 0 else 0.5
    s_lo = math.log(t_scale) - 45.0
    if v5 > 0:
        s_hi = math.log((q_max + 80.0) / v5) + 2.0
        s_hi = min(max(s_hi, s_lo + 5.0), 60.0)
    else:
        s_hi = 60.0
    return s_lo, s_hi


def grid(v1, v4, v5, tau, q_max, panel=0.2, order=12):
    """Nodes in ``s`` and the pair-independent part of the log integrand.

    Returns ``(base, log_t, log_r)`` where ``log_r = log(tau - t)``.
    """
    if not (tau > 0 and math.isfinite(tau)):
        raise DomainError("tables need a finite positive tau")
    if v5 == 0 and q_max >= 1:
        raise DomainError("q >= 1 with v5 = 0 diverges at t = tau")
    s_lo, s_hi = _s_range(v4, v5, tau, q_max)
    n_panel = max(1, int(math.ceil((s_hi - s_lo) / panel)))
    x, w = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(s_lo, s_hi, n_panel + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    s = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    ws = (half[:, None] * w[None, :]).ravel()

    log_tau = math.log(tau)
    l1pe = np.logaddexp(0.0, s)  # log(1 + u)
    log_t = log_tau + s - l1pe
    log_r = log_tau - l1pe
    t = np.exp(log_t)
    u = np.exp(s)
    base = log_tau + s - 2.0 * l1pe + np.log(ws) - v4 * t - v5 * u
    if v1:
        base = base + np.log(np.log1p(t))
    return base, log_t, log_r


def log_psi_table(v1, v4, v5, tau, p, q):
    """``log Psi`` for arrays of exponents ``p`` and ``q`` (same shape)."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    shape = np.broadcast(p, q).shape
    p = np.broadcast_to(p, shape).ravel().copy()
    q = np.broadcast_to(q, shape).ravel().copy()
    base, log_t, log_r = grid(v1, v4, v5, tau, float(q.max()) if q.size else 0.0)
    return kernels.log_psi_pairs(base, log_t, log_r, p, q).reshape(shape)
