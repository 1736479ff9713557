"""
Gray-mapped PSK and square QAM constellations with unit average energy.

A constellation is an array ``points`` indexed by the symbol label, so the
label's bits are the Gray code of the point's position.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from . import kernels
from .errors import ArgumentError

SCHEMES = ("PSK", "QAM")


def _gray(n):
    return n ^ (n >> 1)


def _check(scheme, m_order):
    scheme = str(scheme).upper()
    if scheme not in SCHEMES:
        raise ArgumentError(f"unknown modulation scheme {scheme!r}")
    m_order = int(m_order)
    if m_order < 2 or m_order & (m_order - 1):
        raise ArgumentError(f"M must be a power of two >= 2, got {m_order}")
    if scheme == "QAM":
        side = math.isqrt(m_order)
        if side * side != m_order or m_order < 4:
            raise ArgumentError(f"square QAM needs M = 4, 16, 64, ..., got {m_order}")
    return scheme, m_order


@lru_cache(maxsize=None)
def _table(scheme, m_order):
    pos = np.arange(m_order)
    points = np.empty(m_order, dtype=complex)
    if scheme == "PSK":
        points[_gray(pos)] = np.exp(2j * np.pi * pos / m_order)
    else:
        side = math.isqrt(m_order)
        bits = side.bit_length() - 1
        level = 2.0 * np.arange(side) - (side - 1)
        axis = np.empty(side)
        axis[_gray(np.arange(side))] = level
        labels = np.arange(m_order)
        points[:] = axis[labels >> bits] + 1j * axis[labels & (side - 1)]
        points /= math.sqrt(np.mean(np.abs(points) ** 2))
    points.setflags(write=False)
    return points


def constellation(scheme: str = "PSK", m_order: int = 4) -> np.ndarray:
    """Points indexed by symbol label (read-only view)."""
    return _table(*_check(scheme, m_order))


def bits_per_symbol(m_order: int) -> int:
    return int(m_order).bit_length() - 1


def modulate(labels, scheme: str = "PSK", m_order: int = 4):
    """Map labels in ``[0, M)`` to unit-energy symbols."""
    pts = constellation(scheme, m_order)
    labels = np.asarray(labels)
    if np.any((labels < 0) | (labels >= pts.size)):
        raise ArgumentError("symbol label out of range")
    return pts[labels]


def demodulate(y, scheme: str = "PSK", m_order: int = 4, scale: complex = 1.0):
    """Minimum-distance labels for received samples against ``scale * points``."""
    pts = np.ascontiguousarray(constellation(scheme, m_order) * scale)
    y = np.ascontiguousarray(np.atleast_1d(np.asarray(y, dtype=complex)))
    return kernels.detect(y, pts)


def count_bit_errors(a, b) -> int:
    return int(kernels.bit_errors(np.ascontiguousarray(a, dtype=np.int64),
                                  np.ascontiguousarray(b, dtype=np.int64)))
