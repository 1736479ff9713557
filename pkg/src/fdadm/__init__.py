"""
Secure multi-carrier FDA transmission with single-point artificial noise.

Submodules
----------
array_geometry
    FDA frequency plan and steering vectors.
precoder
    Useful-signal and artificial-noise precoders (SP, ZF, SVD, NoAN).
ftr_channel
    Fluctuating two-ray fading sampler and SNR distribution.
link_model
    Transmit/receive model and per-link SINR statistics.
analytics
    Closed-form BER, average secrecy rate, outage and their bounds.
montecarlo
    Seeded simulation sweeps.
cli
    Command-line entry point.
"""

from ._accel import NUMBA_ENABLED

__version__ = "0.1.0"

__all__ = ["NUMBA_ENABLED", "__version__"]
