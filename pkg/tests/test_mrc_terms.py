import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probeopt.posyalg import (alpha_name, build_mrc_constraint, build_mrc_constraints, p_name,
                              pair_gain, phase_condition)
from probeopt.receivers import mrc, sinr
from probeopt.scene import (ArrayGeometry, ChannelSet, Scenario, SceneObject,
                            reference_scenario, synthesize_channels)
from probeopt.txmodel import coupling_for
from probeopt.vmaci import model_for

from conftest import single_target_scenario


def _point(p, alpha):
    return {**{p_name(t): v for t, v in enumerate(p)},
            **{alpha_name(k): v for k, v in enumerate(alpha)}}


def test_phase_condition_real_channels():
    ch = ChannelSet(g=np.array([[1.0, 2.0, 0.5], [0.3, 1.0, 4.0]], dtype=complex),
                    f=np.ones((3, 1), dtype=complex))
    assert phase_condition(ch, 0, 1)
    assert not pair_gain(ch, 0, 1).minus


def test_phase_condition_opposite_sign():
    ch = ChannelSet(g=np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex),
                    f=np.ones((2, 1), dtype=complex))
    assert not phase_condition(ch, 0, 1)
    assert pair_gain(ch, 0, 1).minus


@pytest.mark.parametrize("seed", range(100))
def test_phase_condition_matches_split(seed):
    sc = reference_scenario(sensor_count=3)
    ch = synthesize_channels(sc, seed)
    for j in range(2):
        for i in range(3):
            if i != j:
                assert phase_condition(ch, j, i) == (not pair_gain(ch, j, i).minus)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_pair_gain_value(seed):
    ch = synthesize_channels(reference_scenario(), seed)
    alpha = np.random.default_rng(seed).uniform(0.1, 2.0, 3)
    direct = abs(np.sum(alpha * ch.g[0] * ch.g[2].conj() * ch.f_sq_norms)) ** 2
    pt = {alpha_name(k): a for k, a in enumerate(alpha)}
    assert pair_gain(ch, 0, 2)(pt) == pytest.approx(direct, rel=1e-10)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 10 ** 6), psi=st.floats(0.05, 5.0))
def test_constraint_matches_numeric_sinr(seed, psi):
    sc = reference_scenario(psi=psi)
    ch = synthesize_channels(sc, seed)
    rng = np.random.default_rng(seed)
    p, alpha = rng.uniform(1e-3, 10.0, 2), rng.uniform(1e-3, 2.0, 3)
    rho = sinr(model_for(sc, ch, p, alpha), mrc(model_for(sc, ch, p, alpha))).sinr
    pt = _point(p, alpha)
    for j, con in enumerate(build_mrc_constraints(sc, ch)):
        assert con.sinr(pt) == pytest.approx(rho[j], rel=1e-10)
        assert (con.numerator(pt) <= con.denominator(pt)) == (rho[j] >= psi)


def test_single_target_term_count():
    sc = single_target_scenario(K=1, R=3)
    con = build_mrc_constraint(sc, synthesize_channels(sc, 0), 0)
    assert len(con.numerator) == 2
    assert len(con.denominator) == 1
    assert not con.interference.plus and not con.interference.minus


def test_disjoint_targets_have_no_interference():
    sc = Scenario(ArrayGeometry(2, 2), [SceneObject(20, 40), SceneObject(45, 30)], 2, 2,
                  [1.0, 1.0])
    ch = ChannelSet(g=np.array([[1.0, 0.0], [0.0, 1.0]], dtype=complex),
                    f=np.ones((2, 2), dtype=complex))
    for con in build_mrc_constraints(sc, ch):
        assert not con.interference.plus and not con.interference.minus


def test_coupling_enters_through_delta():
    sc = reference_scenario()
    ch = synthesize_channels(sc, 1)
    G = coupling_for(sc)
    con = build_mrc_constraint(sc, ch, 0, coupling=G * 2.0)
    base = build_mrc_constraint(sc, ch, 0, coupling=G)
    pt = _point([1.0, 2.0], [0.5, 1.0, 1.5])
    assert con.desired(pt) == pytest.approx(2 * base.desired(pt))
    assert con.fc_noise(pt) == pytest.approx(base.fc_noise(pt))
