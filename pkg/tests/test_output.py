import json
import math
import random

import pytest

from fdadm.config import ExperimentConfig
from fdadm.errors import ArgumentError
from fdadm.montecarlo import Metric, SweepPoint, SweepResult, SweepSpec
from fdadm.output import (FIELDS, OutputRecord, emit_csv, emit_json, output_dir, output_path,
                          read_csv, records_from_result)


def rec(value=0.1, method="SP", est="mc", sweep=5.0, stderr=0.01):
    return OutputRecord("sr:SR_vs_lambdaB", method, "lambda_b", "dB", sweep, "secrecy_rate", est,
                        value, stderr if est == "mc" else None, 7, "abc123")


def test_single_record_round_trip(tmp_path):
    r = rec(value=1 / 3, stderr=math.pi * 1e-5)
    path = emit_csv([r], tmp_path / "a.csv")
    assert read_csv(path) == [r]
    header = path.read_text(encoding="utf-8").splitlines()[0]
    assert header.split(",") == list(FIELDS)


def test_stable_sorted_rows(tmp_path):
    recs = [rec(sweep=s, method=m, est=e) for s in (10.0, 5.0) for m in ("ZF", "SP") for e in ("mc", "analytic")]
    shuffled = recs[:]
    random.Random(1).shuffle(shuffled)
    a = emit_csv(recs, tmp_path / "a.csv").read_text()
    b = emit_csv(shuffled, tmp_path / "b.csv").read_text()
    assert a == b
    back = read_csv(tmp_path / "a.csv")
    assert [(r.sweep_value, r.method, r.estimator) for r in back] == sorted(
        (r.sweep_value, r.method, r.estimator) for r in recs)


def test_empty_and_bad_estimator(tmp_path):
    with pytest.raises(ArgumentError):
        emit_csv([], tmp_path / "x.csv")
    with pytest.raises(ArgumentError):
        rec(est="guess")


def test_unwritable_path(tmp_path):
    with pytest.raises(OSError):
        emit_csv([rec()], tmp_path / "missing" / "x.csv")


def test_json(tmp_path):
    path = emit_json([rec(), rec(est="analytic")], tmp_path / "a.json")
    rows = json.loads(path.read_text())
    assert rows[0]["estimator"] == "analytic" and rows[0]["stderr"] is None


def test_records_from_result():
    spec = SweepSpec(Metric.SR_vs_lambdaB, (5.0,), ("SP",), trials=10, seed=3)
    pts = (SweepPoint(5.0, "SP", "secrecy_rate", 1.0, 0.1, 1.05, 0.9, "lower_bound"),
           SweepPoint(5.0, "SP", "secrecy_rate", analytic_value=2.0))
    recs = records_from_result(SweepResult(spec, pts), "id", "h")
    assert [r.estimator for r in recs] == ["mc", "analytic", "lower_bound", "analytic"]
    assert all(r.seed == 3 and r.config_hash == "h" for r in recs)
    assert recs[0].sweep_unit == "dB"


def test_output_dir_and_names(tmp_path, monkeypatch):
    monkeypatch.setenv("FDADM_OUTPUT_DIR", str(tmp_path / "env"))
    assert output_dir() == tmp_path / "env"
    assert output_dir(tmp_path / "flag") == tmp_path / "flag"
    h = ExperimentConfig.defaults().hash()
    p1 = output_path(tmp_path, "ber", h)
    assert p1.name.startswith(f"ber-{h}-") and p1.suffix == ".csv"
    p1.write_text("x")
    assert output_path(tmp_path, "ber", h) != p1
