"""
Symmetrical multi-carrier frequency diverse array (FDA).

Elements sit on the x-axis at positions ``n*d`` for ``n = -N..N``; each
element radiates ``L`` subcarriers at

    f_{n,l} = f0 + delta_f * ln(|n| + 1) * ln(l + 1).

Steering vectors are stacked element-major: all ``L`` subcarriers of element
``-N`` first, then element ``-N+1`` and so on. Angles are radians here; the
CLI converts from degrees.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

SPEED_OF_LIGHT = 299_792_458.0

# ratio max|delta_f_{n,l}| / f0 above which the far-field simplification is
# flagged (warn) or refused (error)
FREQ_RATIO_WARN = 1e-4
FREQ_RATIO_MAX = 1e-3


@dataclass(frozen=True)
class ArrayConfig:
    """FDA geometry and frequency plan.

    Parameters
    ----------
    n_half : int
        ``N``; the array has ``2N+1`` elements indexed ``-N..N``.
    subcarriers : int
        ``L``, subcarriers per element.
    f0 : float
        Central carrier frequency in Hz.
    delta_f : float
        Fixed frequency increment in Hz.
    spacing : float, optional
        Element spacing in meters. Defaults to half the central wavelength.
    c : float
        Propagation speed in m/s.
    """

    n_half: int = 10
    subcarriers: int = 7
    f0: float = 30e9
    delta_f: float = 20e3
    spacing: float | None = None
    c: float = SPEED_OF_LIGHT

    def __post_init__(self):
        if int(self.n_half) != self.n_half or self.n_half < 1:
            raise ArgumentError(f"n_half must be an integer >= 1, got {self.n_half}")
        if int(self.subcarriers) != self.subcarriers or self.subcarriers < 1:
            raise ArgumentError(f"subcarriers must be an integer >= 1, got {self.subcarriers}")
        if not self.f0 > 0:
            raise ArgumentError("f0 must be positive")
        if not self.delta_f >= 0:
            raise ArgumentError("delta_f must be non-negative")
        if not self.c > 0:
            raise ArgumentError("c must be positive")
        if self.spacing is None:
            object.__setattr__(self, "spacing", self.c / (2.0 * self.f0))
        if not self.spacing > 0:
            raise ArgumentError("spacing must be positive")

        ratio = self.max_offset() / self.f0
        if ratio >= FREQ_RATIO_MAX:
            raise ArgumentError(
                f"max frequency offset is {ratio:.3g} of f0; must stay below {FREQ_RATIO_MAX:g}"
            )
        if ratio > FREQ_RATIO_WARN:
            warnings.warn(
                f"max frequency offset is {ratio:.3g} of f0; far-field phase model degrades",
                stacklevel=3,
            )

    @property
    def n_elements(self) -> int:
        return 2 * self.n_half + 1

    @property
    def dim(self) -> int:
        """Length ``(2N+1)L`` of steering vectors."""
        return self.n_elements * self.subcarriers

    def max_offset(self) -> float:
        return self.delta_f * math.log(self.n_half + 1) * math.log(self.subcarriers)

    def offsets(self) -> np.ndarray:
        """Frequency increments ``delta_f_{n,l}`` as a ``(2N+1, L)`` array."""
        n = np.arange(-self.n_half, self.n_half + 1)
        l = np.arange(self.subcarriers)
        return self.delta_f * np.outer(np.log(np.abs(n) + 1.0), np.log(l + 1.0))


@dataclass(frozen=True)
class Position:
    """Receiver location: range ``r`` (m), azimuth ``theta`` and elevation
    ``psi`` (radians, both in the open interval (-pi/2, pi/2))."""

    r: float
    theta: float
    psi: float

    def __post_init__(self):
        if not self.r > 0:
            raise ArgumentError(f"range must be positive, got {self.r}")
        half = math.pi / 2
        if not -half < self.theta < half:
            raise ArgumentError(f"azimuth {self.theta} rad outside (-pi/2, pi/2)")
        if not -half < self.psi < half:
            raise ArgumentError(f"elevation {self.psi} rad outside (-pi/2, pi/2)")

    @classmethod
    def from_degrees(cls, r, theta_deg, psi_deg):
        return cls(float(r), math.radians(theta_deg), math.radians(psi_deg))


def subcarrier_frequency(cfg: ArrayConfig, n: int, l: int) -> float:
    """Radiated frequency of subcarrier ``l`` on element ``n`` in Hz."""
    if not -cfg.n_half <= n <= cfg.n_half:
        raise ArgumentError(f"element index {n} outside [-{cfg.n_half}, {cfg.n_half}]")
    if not 0 <= l < cfg.subcarriers:
        raise ArgumentError(f"subcarrier index {l} outside [0, {cfg.subcarriers - 1}]")
    return cfg.f0 + cfg.delta_f * math.log(abs(n) + 1) * math.log(l + 1)


def steering_vector(cfg: ArrayConfig, pos: Position, t: float = 0.0) -> np.ndarray:
    """Normalized steering vector ``h(r, theta, psi)`` at time ``t``.

    Returns a complex vector of length ``(2N+1)L`` with unit Euclidean norm.
    The common carrier phase ``exp(i 2 pi f0 (t - r/c))`` is dropped.
    """
    n = np.arange(-cfg.n_half, cfg.n_half + 1, dtype=float)[:, None]
    range_phase = cfg.offsets() * (t - pos.r / cfg.c)
    angle_phase = cfg.f0 * n * cfg.spacing * math.sin(pos.theta) * math.cos(pos.psi) / cfg.c
    phase = 2.0 * np.pi * (range_phase + angle_phase)
    return np.exp(1j * phase).ravel() / math.sqrt(cfg.dim)


def steering_matrix(cfg: ArrayConfig, positions, t: float = 0.0) -> np.ndarray:
    """Steering vectors for several positions stacked as columns."""
    return np.stack([steering_vector(cfg, p, t) for p in positions], axis=1)


def beam_gain(cfg: ArrayConfig, pos: Position, target: Position, t: float = 0.0) -> float:
    """``|h(pos)^H h(target)|^2``, the normalized beampattern toward ``pos``."""
    return float(abs(np.vdot(steering_vector(cfg, pos, t), steering_vector(cfg, target, t))) ** 2)
