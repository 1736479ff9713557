import math

import pytest

from fdadm.config import (SCHEMA, ExperimentConfig, db_to_linear, dump_config, linear_to_db,
                          load_config, parse_config)
from fdadm.errors import ConfigError


def test_defaults_reference_setup(cfg):
    v = cfg.values
    assert v["array.f0"] == 30e9 and v["array.delta_f"] == 20e3
    assert v["array.n_half"] == 10 and v["array.subcarriers"] == 7
    assert v["power.beta1"] == 0.9
    assert (v["ftr_bob.m"], v["ftr_bob.K"], v["ftr_bob.delta"]) == (2.3, 10.0, 0.5)
    assert (v["ftr_eve.m"], v["ftr_eve.K"], v["ftr_eve.delta"]) == (5.3, 15.0, 0.35)
    assert (v["bob.range"], v["bob.azimuth"], v["bob.elevation"]) == (1000.0, 20.0, 30.0)
    assert (v["eve.range"], v["eve.azimuth"], v["eve.elevation"]) == (1500.0, -20.0, 25.0)
    assert v["run.trials"] == 100_000


def test_round_trip_byte_identical(cfg, tmp_path):
    text = dump_config(cfg)
    path = tmp_path / "c.cfg"
    path.write_text(text)
    assert dump_config(load_config(path)) == text
    odd = cfg.with_overrides({"array.spacing": "0.004", "ber.fading": "yes", "power.beta1": "0.7"})
    assert dump_config(parse_config(dump_config(odd))) == dump_config(odd)


def test_hash_stable_and_sensitive(cfg):
    assert cfg.hash() == ExperimentConfig.defaults().hash()
    assert len(cfg.hash()) == 16
    assert cfg.with_overrides({"run.seed": "1"}).hash() != cfg.hash()


def test_comments_and_partial_files():
    c = parse_config("# x\n\nbob.range = 2000  # m\n")
    assert c["bob.range"] == 2000.0
    assert c["eve.range"] == 1500.0


@pytest.mark.parametrize("text,key", [
    ("bob.rnge = 1", "bob.rnge"),
    ("bob.range = 1\nbob.range = 2", "bob.range"),
    ("bob.range 1", "line 1"),
    ("run.trials = many", "run.trials"),
    ("power.beta1 = 1.5", "power.beta1"),
    ("bob.azimuth = 95", "bob.range"),
    ("ftr_bob.delta = 2", "ftr_bob.m"),
    ("modulation.order = 6", "modulation.scheme"),
    ("run.trials = 0", "run.trials"),
    ("power.noise_var_b = 0", "power.noise_var_b"),
])
def test_errors_name_the_key(text, key):
    with pytest.raises(ConfigError) as exc:
        parse_config(text)
    assert exc.value.key == key
    assert str(exc.value).startswith(key)


def test_unreadable_file(tmp_path):
    with pytest.raises(ConfigError):
        load_config(tmp_path / "missing.cfg")


def test_typed_views(cfg):
    assert cfg.bob().theta == pytest.approx(math.radians(20))
    fb = cfg.ftr_bob(10.0)
    assert fb.mean_power == pytest.approx(10.0)
    assert cfg.split().beta2 == pytest.approx(math.sqrt(0.19))
    assert cfg.array().dim == 147


def test_db_conversion():
    assert db_to_linear(10.0) == pytest.approx(10.0)
    assert linear_to_db(100.0) == pytest.approx(20.0)


def test_schema_keys_unique():
    keys = [k for k, *_ in SCHEMA]
    assert len(keys) == len(set(keys))
