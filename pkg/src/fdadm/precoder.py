"""
Useful-signal and artificial-noise (AN) precoders.

All methods share ``p1 = h_B``. They differ in the AN subspace:

* ``SP``  - a single vector orthogonal to ``h_B`` (one scalar AN symbol),
* ``ZF``  - the projector ``I - h_B h_B^H``,
* ``SVD`` - ``2N`` orthonormal null-space columns of ``h_B^H``,
* ``NoAN`` - no AN at all (all power on the symbol).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import ArgumentError

ORTHO_TOL = 1e-10


class Method(str, enum.Enum):
    SP = "SP"
    ZF = "ZF"
    SVD = "SVD"
    NoAN = "NoAN"

    @classmethod
    def parse(cls, name):
        if isinstance(name, cls):
            return name
        for m in cls:
            if m.value.lower() == str(name).strip().lower():
                return m
        raise ArgumentError(f"unknown precoding method {name!r}")


@dataclass(frozen=True)
class PowerSplit:
    """Power splitting factors with ``beta1**2 + beta2**2 == 1``."""

    beta1: float
    beta2: float

    def __post_init__(self):
        if not (0.0 <= self.beta1 <= 1.0 and 0.0 <= self.beta2 <= 1.0):
            raise ArgumentError("beta1 and beta2 must lie in [0, 1]")
        if abs(self.beta1**2 + self.beta2**2 - 1.0) > 1e-12:
            raise ArgumentError("beta1**2 + beta2**2 must equal 1")

    @classmethod
    def from_beta1(cls, beta1: float) -> "PowerSplit":
        if not 0.0 <= beta1 <= 1.0:
            raise ArgumentError(f"beta1 must lie in [0, 1], got {beta1}")
        return cls(float(beta1), math.sqrt(max(0.0, 1.0 - beta1 * beta1)))


@dataclass(frozen=True, eq=False)
class PrecoderSet:
    """Designed precoders for one Bob steering vector.

    ``an_basis`` has shape ``(dim, W)`` with ``W`` = 1 (SP), ``dim`` (ZF),
    ``2N`` (SVD) or 0 (NoAN). ``alpha`` is the SP normalization
    ``1/sqrt(tr(p2 p2^H))``; it is 1 for the other methods, which normalize
    each AN draw at transmit time instead.
    """

    method: Method
    p1: np.ndarray
    an_basis: np.ndarray
    alpha: float = 1.0

    def __post_init__(self):
        self.p1.setflags(write=False)
        self.an_basis.setflags(write=False)

    @property
    def width(self) -> int:
        return self.an_basis.shape[1]

    @property
    def p2(self) -> np.ndarray:
        """The SP orthogonal vector (first AN column)."""
        if self.width == 0:
            raise ArgumentError("NoAN precoder has no AN vector")
        return self.an_basis[:, 0]


@dataclass(frozen=True)
class MemoryFootprint:
    """Complex scalars stored for the orthogonal matrix/vector and the AN."""

    orthogonal_size: int
    an_size: int

    @property
    def total(self) -> int:
        return self.orthogonal_size + self.an_size


def _check_unit(h_b):
    h_b = np.asarray(h_b, dtype=complex)
    if h_b.ndim != 1:
        raise ArgumentError("steering vector must be one-dimensional")
    if abs(np.linalg.norm(h_b) - 1.0) > 1e-9:
        raise ArgumentError("steering vector must have unit norm")
    return h_b


def design_p1(h_b) -> np.ndarray:
    """Normalization vector ``p1 = h_B`` so that ``h_B^H p1 = 1``."""
    return _check_unit(h_b).copy()


def _gram_schmidt_complement(h_b, count, start=0):
    """Orthonormal vectors orthogonal to ``h_b`` from standard basis vectors
    taken in index order, skipping those (nearly) inside the span so far."""
    dim = h_b.size
    basis = [h_b]
    out = []
    for k in range(start, start + dim):
        if len(out) == count:
            break
        v = np.zeros(dim, dtype=complex)
        v[k % dim] = 1.0
        # two passes of classical Gram-Schmidt keep leakage near machine eps
        for _ in range(2):
            for q in basis:
                v -= q * np.vdot(q, v)
        nrm = np.linalg.norm(v)
        if nrm < 1e-8:
            continue
        v /= nrm
        basis.append(v)
        out.append(v)
    if len(out) < count:
        raise ArgumentError(
            f"null space of h_B^H has dimension {dim - 1}, cannot supply {count} columns"
        )
    return np.stack(out, axis=1)


def design_sp(h_b, seed=None) -> PrecoderSet:
    """Single-point AN precoder.

    With ``seed=None`` the orthogonal vector is the canonical Gram-Schmidt
    projection of the first standard basis vector not parallel to ``h_B``.
    Passing a seed draws a random complex Gaussian vector instead and
    projects it; the choice is reproducible for a given seed.
    """
    h_b = _check_unit(h_b)
    if h_b.size < 2:
        raise ArgumentError("dimension 1 has no orthogonal complement")
    if seed is None:
        p2 = _gram_schmidt_complement(h_b, 1)[:, 0]
    else:
        rng = np.random.default_rng(seed)
        v = rng.standard_normal(h_b.size) + 1j * rng.standard_normal(h_b.size)
        for _ in range(2):
            v = v - h_b * np.vdot(h_b, v)
        p2 = v / np.linalg.norm(v)
    alpha = 1.0 / math.sqrt(float(np.vdot(p2, p2).real))
    return PrecoderSet(Method.SP, h_b.copy(), p2[:, None], alpha)


def design_zf(h_b) -> PrecoderSet:
    """Zero-forcing projector ``I - h_B h_B^H``."""
    h_b = _check_unit(h_b)
    p2 = np.eye(h_b.size, dtype=complex) - np.outer(h_b, h_b.conj())
    return PrecoderSet(Method.ZF, h_b.copy(), p2)


def design_svd(h_b, n_half: int) -> PrecoderSet:
    """Null-space basis truncated to ``2N`` columns.

    The columns come from a fixed Gram-Schmidt order over standard basis
    vectors, so they are deterministic and mutually orthonormal.
    """
    h_b = _check_unit(h_b)
    width = 2 * int(n_half)
    if h_b.size - 1 < width:
        raise ArgumentError(
            f"null space dimension {h_b.size - 1} is smaller than 2N = {width}"
        )
    return PrecoderSet(Method.SVD, h_b.copy(), _gram_schmidt_complement(h_b, width))


def design_noan(h_b) -> PrecoderSet:
    h_b = _check_unit(h_b)
    return PrecoderSet(Method.NoAN, h_b.copy(), np.zeros((h_b.size, 0), dtype=complex))


def design(method, h_b, n_half: int, seed=None) -> PrecoderSet:
    method = Method.parse(method)
    if method is Method.SP:
        return design_sp(h_b, seed)
    if method is Method.ZF:
        return design_zf(h_b)
    if method is Method.SVD:
        return design_svd(h_b, n_half)
    return design_noan(h_b)


def memory_footprint(method, n_half: int, subcarriers: int) -> MemoryFootprint:
    """Storage of the orthogonal matrix/vector and AN, in complex scalars."""
    if n_half < 1 or subcarriers < 1:
        raise ArgumentError("N and L must be >= 1")
    method = Method.parse(method)
    dim = (2 * n_half + 1) * subcarriers
    if method is Method.ZF:
        return MemoryFootprint(dim * dim, dim)
    if method is Method.SVD:
        return MemoryFootprint(dim * 2 * n_half, 2 * n_half)
    if method is Method.SP:
        return MemoryFootprint(dim, 1)
    return MemoryFootprint(0, 0)


def max_leakage(pre: PrecoderSet, h_b) -> float:
    """Largest ``|h_B^H w|`` over AN columns ``w``."""
    if pre.width == 0:
        return 0.0
    return float(np.max(np.abs(np.conj(h_b) @ pre.an_basis)))
