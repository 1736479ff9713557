import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fdadm.array_geometry import (ArrayConfig, Position, beam_gain, steering_matrix,
                                  steering_vector, subcarrier_frequency)
from fdadm.errors import ArgumentError

C = 299_792_458.0
angles = st.floats(-1.5, 1.5)
ranges = st.floats(1.0, 1e5)


def test_frequency_at_center_element_and_first_subcarrier():
    cfg = ArrayConfig()
    for l in range(cfg.subcarriers):
        assert subcarrier_frequency(cfg, 0, l) == 30e9
    for n in range(-cfg.n_half, cfg.n_half + 1):
        assert subcarrier_frequency(cfg, n, 0) == 30e9


def test_frequency_hand_value():
    cfg = ArrayConfig()
    assert subcarrier_frequency(cfg, 1, 1) - 30e9 == pytest.approx(20e3 * math.log(2) ** 2, rel=1e-6)
    assert subcarrier_frequency(cfg, 1, 1) - 30e9 == pytest.approx(9609.06, abs=0.01)


def test_frequency_symmetric_in_element_index():
    cfg = ArrayConfig()
    off = cfg.offsets()
    assert np.array_equal(off, off[::-1])


@pytest.mark.parametrize("n,l", [(11, 0), (-11, 0), (0, 7), (0, -1)])
def test_frequency_index_out_of_range(n, l):
    with pytest.raises(ArgumentError):
        subcarrier_frequency(ArrayConfig(), n, l)


def test_config_validation():
    with pytest.raises(ArgumentError):
        ArrayConfig(n_half=0)
    with pytest.raises(ArgumentError):
        ArrayConfig(subcarriers=0)
    with pytest.raises(ArgumentError):
        ArrayConfig(f0=-1.0)
    with pytest.raises(ArgumentError):
        ArrayConfig(delta_f=-1.0)
    with pytest.raises(ArgumentError):
        ArrayConfig(spacing=0.0)
    assert ArrayConfig().spacing == pytest.approx(C / 60e9)


def test_frequency_ratio_soft_and_hard_limits():
    # ln(11) ln(7) ~ 4.664; ratio = delta_f * 4.664 / f0
    with pytest.warns(UserWarning):
        ArrayConfig(delta_f=1e-4 * 30e9 / 4.664 * 2)
    with pytest.raises(ArgumentError):
        ArrayConfig(delta_f=1e-3 * 30e9 / 4.664 * 1.01)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        ArrayConfig()


def test_position_validation():
    with pytest.raises(ArgumentError):
        Position(0.0, 0.0, 0.0)
    with pytest.raises(ArgumentError):
        Position(1.0, math.pi / 2, 0.0)
    with pytest.raises(ArgumentError):
        Position(1.0, 0.0, -math.pi / 2)
    p = Position.from_degrees(1000, 20, 30)
    assert p.theta == pytest.approx(math.radians(20))


@settings(max_examples=50, deadline=None)
@given(ranges, angles, angles, st.floats(0.0, 1e-3))
def test_steering_vector_unit_norm(r, theta, psi, t):
    h = steering_vector(ArrayConfig(), Position(r, theta, psi), t)
    assert h.shape == (21 * 7,)
    assert np.linalg.norm(h) == pytest.approx(1.0, abs=1e-12)
    assert np.allclose(np.abs(h), 1.0 / math.sqrt(147), atol=1e-15)


def test_steering_vector_constant_without_offsets_at_broadside():
    cfg = ArrayConfig(delta_f=0.0)
    h = steering_vector(cfg, Position(700.0, 0.0, 0.3))
    assert np.allclose(h, 1.0 / math.sqrt(cfg.dim), atol=1e-15)


def test_steering_vector_hand_phases():
    cfg = ArrayConfig(n_half=1, subcarriers=1, delta_f=12345.0)
    r = 1000.0
    # theta just inside the open interval; sin(theta) = 1 - 1e-16 is 1 in double
    theta = math.pi / 2 - 1e-9
    h = steering_vector(cfg, Position(r, theta, 0.0), t=r / C)
    expected = np.array([-1.0, 1.0, -1.0]) / math.sqrt(3)
    assert np.allclose(h, expected, atol=1e-6)


def test_element_major_ordering():
    cfg = ArrayConfig(n_half=2, subcarriers=3)
    pos = Position.from_degrees(900, 15, 10)
    h = steering_vector(cfg, pos).reshape(5, 3)
    n = np.arange(-2, 3)[:, None]
    l = np.arange(3)[None, :]
    dfnl = cfg.delta_f * np.log(np.abs(n) + 1) * np.log(l + 1)
    phase = 2 * np.pi * (dfnl * (-pos.r / C)
                         + cfg.f0 * n * cfg.spacing * math.sin(pos.theta) * math.cos(pos.psi) / C)
    assert np.allclose(h, np.exp(1j * phase) / math.sqrt(15), atol=1e-12)


def test_range_changes_only_global_phase_without_offsets():
    cfg = ArrayConfig(delta_f=0.0)
    a = steering_vector(cfg, Position.from_degrees(1000, 20, 30))
    b = steering_vector(cfg, Position.from_degrees(4321, 20, 30))
    assert abs(np.vdot(a, b)) == pytest.approx(1.0, abs=1e-10)


def test_range_dependent_beampattern():
    cfg = ArrayConfig()
    bob = Position.from_degrees(1000, 20, 30)
    for r in (200.0, 500.0, 2000.0, 3000.0, 5000.0):
        assert beam_gain(cfg, Position(r, bob.theta, bob.psi), bob) < 1.0 - 1e-6
    assert beam_gain(cfg, bob, bob) == pytest.approx(1.0, abs=1e-12)


def test_steering_matrix_columns():
    cfg = ArrayConfig()
    ps = [Position.from_degrees(1000, 20, 30), Position.from_degrees(1500, -20, 25)]
    m = steering_matrix(cfg, ps)
    assert m.shape == (cfg.dim, 2)
    assert np.array_equal(m[:, 1], steering_vector(cfg, ps[1]))
