"""
Experiment configuration as flat ``section.key = value`` text.

Lines starting with ``#`` and blank lines are ignored; a ``#`` after a value
starts a comment. Angles are degrees and SNRs are dB; conversion to radians
and linear scale happens in the accessor methods. Missing keys take the
defaults listed in :data:`SCHEMA`, and :func:`dump_config` writes every key
in schema order so that ``dump -> parse -> dump`` is byte-identical.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass
from types import MappingProxyType

from .analytics import QuadratureOptions
from .array_geometry import ArrayConfig, Position
from .errors import ArgumentError, ConfigError
from .ftr_channel import FtrParams, SeriesOptions, sigma_from_avg_snr
from .modulation import _check as _check_modulation
from .precoder import PowerSplit


def _bool(text):
    low = text.strip().lower()
    if low in ("true", "yes", "on", "1"):
        return True
    if low in ("false", "no", "off", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _auto_float(text):
    return None if text.strip().lower() == "auto" else float(text)


# key, parser, default, help
SCHEMA = (
    ("array.n_half", int, 10, "N; the array has 2N+1 elements"),
    ("array.subcarriers", int, 7, "L subcarriers per element"),
    ("array.f0", float, 30e9, "central carrier frequency, Hz"),
    ("array.delta_f", float, 20e3, "frequency increment, Hz"),
    ("array.spacing", _auto_float, None, "element spacing, m (auto = half wavelength)"),
    ("array.c", float, 299_792_458.0, "propagation speed, m/s"),
    ("array.time", float, 0.0, "evaluation instant of steering vectors, s"),
    ("bob.range", float, 1000.0, "m"),
    ("bob.azimuth", float, 20.0, "deg"),
    ("bob.elevation", float, 30.0, "deg"),
    ("eve.range", float, 1500.0, "m"),
    ("eve.azimuth", float, -20.0, "deg"),
    ("eve.elevation", float, 25.0, "deg"),
    ("ftr_bob.m", float, 2.3, ""),
    ("ftr_bob.K", float, 10.0, ""),
    ("ftr_bob.delta", float, 0.5, ""),
    ("ftr_eve.m", float, 5.3, ""),
    ("ftr_eve.K", float, 15.0, ""),
    ("ftr_eve.delta", float, 0.35, ""),
    ("power.ps", float, 1.0, "total transmit power, linear"),
    ("power.beta1", float, 0.9, "useful-signal amplitude fraction"),
    ("power.noise_var_b", float, 0.1, "Bob noise variance, linear"),
    ("power.noise_var_e", float, 0.1, "Eve noise variance, linear"),
    ("secrecy.lambda_b_db", float, 15.0, "Bob average SNR when not swept, dB"),
    ("secrecy.lambda_e_db", float, 10.0, "Eve average SNR when not swept, dB"),
    ("secrecy.r0", float, 0.5, "target secrecy rate, bits/s/Hz"),
    ("series.max_terms", int, 400, ""),
    ("series.rel_tol", float, 1e-10, ""),
    ("quadrature.rel_tol", float, 1e-8, ""),
    ("quadrature.max_subdivisions", int, 200, ""),
    ("run.trials", int, 100_000, "Monte Carlo trials per grid point"),
    ("run.seed", int, 20_240_101, ""),
    ("modulation.scheme", str, "PSK", "PSK or QAM"),
    ("modulation.order", int, 4, "constellation size M"),
    ("ber.fading", _bool, False, "apply Bob's FTR fading in BER sweeps"),
)

_PARSERS = {k: p for k, p, _, _ in SCHEMA}
_DEFAULTS = {k: d for k, _, d, _ in SCHEMA}


def _format(value):
    if value is None:
        return "auto"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


@dataclass(frozen=True)
class ExperimentConfig:
    """Immutable mapping from dotted keys to typed values."""

    values: MappingProxyType

    def __post_init__(self):
        _validate(self)

    @classmethod
    def defaults(cls) -> "ExperimentConfig":
        return cls(MappingProxyType(dict(_DEFAULTS)))

    def __getitem__(self, key):
        return self.values[key]

    def __reduce__(self):
        # mapping proxies do not pickle; worker processes need the config
        return _from_dict, (dict(self.values),)

    def with_overrides(self, overrides) -> "ExperimentConfig":
        """New config with ``{key: value}`` replaced; string values are parsed."""
        vals = dict(self.values)
        for key, value in overrides.items():
            if key not in _PARSERS:
                raise ConfigError("unknown key", key)
            vals[key] = _parse_value(key, value) if isinstance(value, str) else value
        return ExperimentConfig(MappingProxyType(vals))

    # -- typed views ------------------------------------------------------

    def array(self) -> ArrayConfig:
        v = self.values
        return ArrayConfig(v["array.n_half"], v["array.subcarriers"], v["array.f0"],
                           v["array.delta_f"], v["array.spacing"], v["array.c"])

    def bob(self) -> Position:
        v = self.values
        return Position.from_degrees(v["bob.range"], v["bob.azimuth"], v["bob.elevation"])

    def eve(self) -> Position:
        v = self.values
        return Position.from_degrees(v["eve.range"], v["eve.azimuth"], v["eve.elevation"])

    def split(self) -> PowerSplit:
        return PowerSplit.from_beta1(self.values["power.beta1"])

    def ftr_bob(self, avg_snr_db: float) -> FtrParams:
        """Bob's fading with ``sigma2`` set for average SNR ``avg_snr_db``."""
        return self._ftr("ftr_bob", avg_snr_db)

    def ftr_eve(self, avg_snr_db: float) -> FtrParams:
        return self._ftr("ftr_eve", avg_snr_db)

    def _ftr(self, sec, avg_snr_db):
        v = self.values
        k = v[f"{sec}.K"]
        return FtrParams(v[f"{sec}.m"], k, v[f"{sec}.delta"], sigma_from_avg_snr(db_to_linear(avg_snr_db), k))

    def series_options(self) -> SeriesOptions:
        return SeriesOptions(self.values["series.max_terms"], self.values["series.rel_tol"])

    def quadrature_options(self) -> QuadratureOptions:
        return QuadratureOptions(self.values["quadrature.rel_tol"], self.values["quadrature.max_subdivisions"])

    def text(self) -> str:
        return dump_config(self)

    def hash(self) -> str:
        """First 16 hex digits of the SHA-256 of the canonical text."""
        return hashlib.sha256(self.text().encode("utf-8")).hexdigest()[:16]


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def linear_to_db(x: float) -> float:
    return 10.0 * math.log10(x)


def _parse_value(key, text):
    try:
        return _PARSERS[key](text.strip())
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"cannot parse {text.strip()!r} ({exc})", key) from None


def _validate(cfg: ExperimentConfig):
    v = cfg.values
    missing = [k for k in _PARSERS if k not in v]
    if missing:
        raise ConfigError("missing value", missing[0])
    checks = (
        ("array.n_half", cfg.array),
        ("bob.range", cfg.bob),
        ("eve.range", cfg.eve),
        ("power.beta1", cfg.split),
        ("ftr_bob.m", lambda: cfg.ftr_bob(0.0)),
        ("ftr_eve.m", lambda: cfg.ftr_eve(0.0)),
        ("series.max_terms", cfg.series_options),
        ("quadrature.rel_tol", cfg.quadrature_options),
        ("modulation.scheme", lambda: _check_modulation(v["modulation.scheme"], v["modulation.order"])),
    )
    for key, build in checks:
        try:
            build()
        except ArgumentError as exc:
            raise ConfigError(str(exc), key) from None
    for key in ("power.ps", "power.noise_var_b", "power.noise_var_e"):
        if not v[key] > 0:
            raise ConfigError("must be positive", key)
    if v["run.trials"] < 1:
        raise ConfigError("must be >= 1", "run.trials")
    if v["secrecy.r0"] < 0:
        raise ConfigError("must be non-negative", "secrecy.r0")


def parse_config(text: str) -> ExperimentConfig:
    """Parse config text over the defaults.

    Raises
    ------
    ConfigError
        Naming the offending key (or line) for unknown keys, malformed
        lines, duplicates and invalid values.
    """
    vals = dict(_DEFAULTS)
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError("expected 'key = value'", f"line {lineno}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigError("unknown key", key)
        if key in seen:
            raise ConfigError("duplicate key", key)
        seen.add(key)
        vals[key] = _parse_value(key, value)
    return ExperimentConfig(MappingProxyType(vals))


def load_config(path) -> ExperimentConfig:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc.strerror}", str(path)) from None
    return parse_config(text)


def dump_config(cfg: ExperimentConfig) -> str:
    """Canonical text: one ``key = value`` line per schema key, grouped by section."""
    lines = []
    section = None
    for key, _, _, _ in SCHEMA:
        sec = key.split(".", 1)[0]
        if sec != section:
            if section is not None:
                lines.append("")
            lines.append(f"# {sec}")
            section = sec
        lines.append(f"{key} = {_format(cfg[key])}")
    return "\n".join(lines) + "\n"


def _from_dict(vals: dict) -> ExperimentConfig:
    return ExperimentConfig(MappingProxyType(vals))
