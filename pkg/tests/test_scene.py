import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probeopt.errors import ConfigurationError
from probeopt.scene import (ArrayGeometry, ChannelSpec, Scenario, SceneObject,
                            bundled_scenario_path, load_scenario, reference_scenario,
                            save_scenario, steering_vector, synthesize_channels)

angles = st.floats(-360.0, 360.0, allow_nan=False)


def test_single_element_steering():
    a = steering_vector(ArrayGeometry(1, 1), SceneObject(33.0, 71.0, 1.0))
    np.testing.assert_allclose(a, [1.0 + 0j])


def test_two_element_quarter_turn():
    a = steering_vector(ArrayGeometry(2, 1), SceneObject(30.0, 90.0, 1.0))
    np.testing.assert_allclose(a, [1.0, 1j], atol=1e-15)


def test_pathloss_magnitude():
    a = steering_vector(ArrayGeometry(3, 2), SceneObject(10.0, 20.0, 2.0), gamma=2.0)
    np.testing.assert_allclose(np.abs(a), 0.5)


def test_mprime_fastest_ordering():
    # theta=0 removes the m phase, so consecutive entries step in m'
    a = steering_vector(ArrayGeometry(2, 3), SceneObject(0.0, 60.0, 1.0))
    step = np.exp(1j * np.pi * np.cos(np.deg2rad(60.0)))
    np.testing.assert_allclose(a, [1, step, step ** 2] * 2, atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(th=angles, ph=angles, r=st.floats(0.1, 10.0), m=st.integers(1, 4), mp=st.integers(1, 4))
def test_steering_norm(th, ph, r, m, mp):
    a = steering_vector(ArrayGeometry(m, mp), SceneObject(th, ph, r), gamma=2.0)
    assert np.linalg.norm(a) ** 2 == pytest.approx(r ** -2 * m * mp, rel=1e-12)


@settings(max_examples=100, deadline=None)
@given(th=angles, ph=angles)
def test_steering_periodic(th, ph):
    arr = ArrayGeometry(2, 2)
    a = steering_vector(arr, SceneObject(th, ph))
    b = steering_vector(arr, SceneObject(th + 360.0, ph - 360.0))
    np.testing.assert_allclose(a, b, atol=1e-10)


def test_channels_deterministic(ref_near):
    a = synthesize_channels(ref_near, 3)
    b = synthesize_channels(ref_near, 3)
    np.testing.assert_array_equal(a.g, b.g)
    np.testing.assert_array_equal(a.f, b.f)
    assert a.g.shape == (3, 3) and a.f.shape == (3, 10)


def test_default_seed_from_scenario(ref_near):
    sc = ref_near.replace(rng_seed=42)
    np.testing.assert_array_equal(synthesize_channels(sc).g, synthesize_channels(sc, 42).g)


def test_rayleigh_unit_variance():
    sc = reference_scenario(sensor_count=10_000)
    g = synthesize_channels(sc, 0).g
    assert np.mean(np.abs(g) ** 2) == pytest.approx(1.0, abs=0.05)


def test_los_requires_positions():
    sc = reference_scenario().replace(channel_spec=ChannelSpec(kind="los"))
    with pytest.raises(ConfigurationError):
        synthesize_channels(sc)


def test_los_unit_distance():
    obj = SceneObject(20.0, 40.0, 2.0)
    p = obj.position()
    sensor = p + np.array([1.0, 0.0, 0.0])
    sc = Scenario(ArrayGeometry(), [obj], 1, 1, [1.0],
                  channel_spec=ChannelSpec("los", [tuple(sensor)], 0.02))
    assert abs(synthesize_channels(sc).g[0, 0]) == pytest.approx(1.0, rel=1e-12)


def test_scenario_validation():
    t = SceneObject(0.0, 0.0)
    c = SceneObject(0.0, 0.0, kind="clutter")
    with pytest.raises(ConfigurationError):
        Scenario(ArrayGeometry(), [c, t], 1, 1, [1.0])
    with pytest.raises(ConfigurationError):
        Scenario(ArrayGeometry(), [t], 1, 1, [1.0, 2.0])
    with pytest.raises(ConfigurationError):
        SceneObject(0.0, 0.0, range_m=0.0)
    with pytest.raises(ConfigurationError):
        ArrayGeometry(0, 2)


def test_json_roundtrip(tmp_path, ref_far):
    path = tmp_path / "s.json"
    save_scenario(ref_far, path)
    assert load_scenario(path) == ref_far


def test_malformed_json_reports_line(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "sensor_count": 3,\n  oops\n}\n')
    with pytest.raises(ConfigurationError, match=r"bad\.json:3:"):
        load_scenario(path)


def test_bundled_scenarios():
    near = load_scenario(bundled_scenario_path("near"))
    far = load_scenario(bundled_scenario_path("far"))
    assert near == reference_scenario(0.5)
    assert far == reference_scenario(2.0)
    assert json.loads(bundled_scenario_path("near").read_text())["fusion_antennas"] == 10
