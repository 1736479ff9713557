"""
Self-describing result rows and their CSV/JSON serialization.
"""

from __future__ import annotations

import csv
import json
import math
import os
import time
from dataclasses import asdict, dataclass, fields
from pathlib import Path

from .errors import ArgumentError

OUTPUT_DIR_ENV = "FDADM_OUTPUT_DIR"
ESTIMATORS = ("mc", "analytic", "lower_bound", "upper_bound")


@dataclass(frozen=True)
class OutputRecord:
    experiment_id: str
    method: str
    sweep_variable: str
    sweep_unit: str
    sweep_value: float
    metric: str
    estimator: str
    value: float
    stderr: float | None
    seed: int
    config_hash: str

    def __post_init__(self):
        if self.estimator not in ESTIMATORS:
            raise ArgumentError(f"unknown estimator {self.estimator!r}")


FIELDS = tuple(f.name for f in fields(OutputRecord))


def records_from_result(result, experiment_id: str, config_hash: str):
    """Flatten a :class:`~fdadm.montecarlo.SweepResult` into records."""
    name, unit = result.spec.metric.sweep_variable
    seed = int(result.spec.seed)
    out = []

    def add(p, estimator, value, stderr=None):
        out.append(OutputRecord(experiment_id, p.method, name, unit, float(p.sweep_value), p.metric,
                                estimator, float(value), stderr, seed, config_hash))

    for p in result.points:
        if not math.isnan(p.mc_value):
            add(p, "mc", p.mc_value, float(p.mc_stderr))
        if not math.isnan(p.analytic_value):
            add(p, "analytic", p.analytic_value)
        if p.bound_kind and not math.isnan(p.bound_value):
            add(p, p.bound_kind, p.bound_value)
    return out


def sort_records(records):
    """Stable order: sweep value, then method, then estimator."""
    return sorted(records, key=lambda r: (r.sweep_value, r.method, r.estimator))


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return "%.17g" % value
    return str(value)


def emit_csv(records, path) -> Path:
    """Write records as UTF-8 CSV with a header row.

    Floats carry 17 significant digits so they parse back bit-exactly.
    """
    records = list(records)
    if not records:
        raise ArgumentError("no records to write")
    path = Path(path)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(FIELDS)
        for r in sort_records(records):
            w.writerow([_fmt(getattr(r, f)) for f in FIELDS])
    return path


def read_csv(path):
    """Parse a file written by :func:`emit_csv`."""
    out = []
    with open(path, encoding="utf-8", newline="") as fh:
        for row in csv.DictReader(fh):
            out.append(OutputRecord(
                row["experiment_id"], row["method"], row["sweep_variable"], row["sweep_unit"],
                float(row["sweep_value"]), row["metric"], row["estimator"], float(row["value"]),
                float(row["stderr"]) if row["stderr"] else None, int(row["seed"]), row["config_hash"],
            ))
    return out


def emit_json(records, path) -> Path:
    path = Path(path)
    rows = [asdict(r) for r in sort_records(records)]
    for row in rows:
        for k, v in row.items():
            if isinstance(v, float) and not math.isfinite(v):
                row[k] = None
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(rows, fh, indent=1)
        fh.write("\n")
    return path


def output_dir(explicit=None) -> Path:
    """``explicit``, else ``$FDADM_OUTPUT_DIR``, else ``./results``; created on demand."""
    d = Path(explicit or os.environ.get(OUTPUT_DIR_ENV) or "results")
    d.mkdir(parents=True, exist_ok=True)
    return d


def output_path(directory, subcommand: str, config_hash: str, suffix: str = ".csv") -> Path:
    """``<subcommand>-<hash>-<UTC timestamp><suffix>``, never overwriting."""
    stamp = time.strftime("%Y%m%dT%H%M%SZ", time.gmtime())
    base = Path(directory) / f"{subcommand}-{config_hash}-{stamp}"
    path = base.with_suffix(suffix)
    k = 1
    while path.exists():
        path = Path(f"{base}-{k}{suffix}")
        k += 1
    return path
