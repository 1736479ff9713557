"""
Hot numeric loops, each in two flavours.

``*_nb`` functions are numba-compiled loops; ``*_np`` functions are
vectorized numpy/scipy equivalents. The public names dispatch on
:data:`fdadm._accel.NUMBA_ENABLED` (``FDADM_DISABLE_NUMBA=1`` forces numpy).
Both flavours are kept importable so tests and the benchmark can compare
them directly.
"""

import math

import numpy as np
from scipy.special import gammainc, gammaln

from ._accel import NUMBA_ENABLED, njit, prange

_CHUNK = 256


# ---------------------------------------------------------------------------
# log-sum-exp over quadrature nodes for families of integrals
#   out[k] = log sum_i exp(base[i] + p[k]*log_t[i] - q[k]*log_r[i])
# ---------------------------------------------------------------------------


@njit(parallel=True, cache=True)
def log_psi_pairs_nb(base, log_t, log_r, p, q):
    npair = p.shape[0]
    nnode = base.shape[0]
    out = np.empty(npair)
    for k in prange(npair):
        pk = p[k]
        qk = q[k]
        mx = -np.inf
        for i in range(nnode):
            v = base[i] + pk * log_t[i] - qk * log_r[i]
            if v > mx:
                mx = v
        if mx == -np.inf:
            out[k] = -np.inf
            continue
        acc = 0.0
        for i in range(nnode):
            acc += math.exp(base[i] + pk * log_t[i] - qk * log_r[i] - mx)
        out[k] = mx + math.log(acc)
    return out


def log_psi_pairs_np(base, log_t, log_r, p, q):
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    out = np.empty(p.shape[0])
    for lo in range(0, p.shape[0], _CHUNK):
        hi = lo + _CHUNK
        v = base[None, :] + p[lo:hi, None] * log_t[None, :] - q[lo:hi, None] * log_r[None, :]
        mx = v.max(axis=1)
        finite = np.isfinite(mx)
        safe = np.where(finite, mx, 0.0)
        with np.errstate(under="ignore"):
            s = np.exp(v - safe[:, None]).sum(axis=1)
        out[lo:hi] = np.where(finite, safe + np.log(s), -np.inf)
    return out


# ---------------------------------------------------------------------------
# Poisson-Gamma mixture: sum_j w_j Gamma(j+1, 1) evaluated at y = x / theta
#   pdf_unit(y) = sum_j w_j y^j e^-y / j!
#   cdf(y)      = sum_j w_j P(j+1, y)     (regularized lower incomplete gamma)
# ---------------------------------------------------------------------------


@njit(parallel=True, cache=True)
def gamma_mixture_nb(y, log_w):
    n = y.shape[0]
    nterm = log_w.shape[0]
    pdf = np.zeros(n)
    cdf = np.zeros(n)
    for k in prange(n):
        yk = y[k]
        if yk <= 0.0:
            pdf[k] = math.exp(log_w[0]) if yk == 0.0 else 0.0
            continue
        ly = math.log(yk)
        # P(1, y) = 1 - e^-y ; P(j+1, y) = P(j, y) - y^j e^-y / j!
        tail = -math.expm1(-yk)
        sp = 0.0
        sc = 0.0
        for j in range(nterm):
            lp = j * ly - yk - math.lgamma(j + 1.0)
            pj = math.exp(lp)
            if j > 0:
                tail -= pj
                if tail < 0.0:
                    tail = 0.0
            wj = math.exp(log_w[j])
            sp += wj * pj
            sc += wj * tail
        pdf[k] = sp
        cdf[k] = sc
    return pdf, cdf


def gamma_mixture_np(y, log_w):
    y = np.asarray(y, dtype=float)
    j = np.arange(log_w.shape[0], dtype=float)
    w = np.exp(log_w)
    pdf = np.empty(y.shape[0])
    cdf = np.empty(y.shape[0])
    for lo in range(0, y.shape[0], _CHUNK):
        yy = y[lo:lo + _CHUNK, None]
        pos = yy > 0
        with np.errstate(divide="ignore", invalid="ignore", under="ignore"):
            lp = np.where(pos, j * np.log(np.where(pos, yy, 1.0)) - yy - gammaln(j + 1.0), -np.inf)
            lp[:, 0] = np.where(yy[:, 0] >= 0, -np.maximum(yy[:, 0], 0.0), -np.inf)
            pdf[lo:lo + _CHUNK] = np.exp(lp) @ w
        cdf[lo:lo + _CHUNK] = gammainc(j + 1.0, np.maximum(yy, 0.0)) @ w
    return pdf, cdf


# ---------------------------------------------------------------------------
# minimum-distance detection and bit-error counting
# ---------------------------------------------------------------------------


@njit(parallel=True, cache=True)
def detect_nb(y, points):
    n = y.shape[0]
    m = points.shape[0]
    out = np.empty(n, dtype=np.int64)
    for k in prange(n):
        best = 0
        bd = np.inf
        yr = y[k].real
        yi = y[k].imag
        for i in range(m):
            dr = yr - points[i].real
            di = yi - points[i].imag
            d = dr * dr + di * di
            if d < bd:
                bd = d
                best = i
        out[k] = best
    return out


def detect_np(y, points):
    out = np.empty(y.shape[0], dtype=np.int64)
    step = 8 * _CHUNK
    for lo in range(0, y.shape[0], step):
        d = np.abs(y[lo:lo + step, None] - points[None, :])
        out[lo:lo + step] = np.argmin(d, axis=1)
    return out


@njit(cache=True)
def bit_errors_nb(a, b):
    total = 0
    for k in range(a.shape[0]):
        x = a[k] ^ b[k]
        while x:
            x &= x - 1
            total += 1
    return total


def bit_errors_np(a, b):
    x = np.bitwise_xor(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
    return int(np.unpackbits(x.astype(">u8").view(np.uint8)).sum())


if NUMBA_ENABLED:
    log_psi_pairs = log_psi_pairs_nb
    gamma_mixture = gamma_mixture_nb
    detect = detect_nb
    bit_errors = bit_errors_nb
else:
    log_psi_pairs = log_psi_pairs_np
    gamma_mixture = gamma_mixture_np
    detect = detect_np
    bit_errors = bit_errors_np
