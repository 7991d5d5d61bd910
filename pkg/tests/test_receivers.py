import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from probeopt.errors import SingularityError
from probeopt.receivers import (CombinerBank, combiner_mse, mmse, mrc, mrc_closed_form, sinr,
                                zf)
from probeopt.scene import ChannelSet
from probeopt.vmaci import VmaciModel, assemble, coherence

from conftest import orthogonal_instance, random_model

seeds = st.integers(0, 1_000_000)


def _raw_model(W, n_targets, delta=None, moments=None, sigma2=1.0):
    N = W.shape[1]
    return VmaciModel(w=W, noise_cov=sigma2 * np.eye(W.shape[0]),
                      delta=np.ones(N) if delta is None else delta,
                      moments=np.ones(N) if moments is None else moments,
                      alpha=np.ones(1), noise_variance=sigma2, n_targets=n_targets)


def test_mrc_bank_is_target_columns():
    m, _ = random_model(0)
    np.testing.assert_array_equal(mrc(m).v, m.w[:, :2])


def test_scalar_sinr():
    ch = ChannelSet(g=np.array([[1.0 + 0j]]), f=np.array([[1.0 + 0j]]))
    m = assemble(ch, [1.0], [1.0], [1.0], 1.0)
    assert sinr(m, mrc(m)).sinr[0] == pytest.approx(0.5, rel=1e-15)


def test_zf_unitary():
    rng = np.random.default_rng(0)
    U, _ = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))
    m = _raw_model(U, 3)
    np.testing.assert_allclose(zf(m).v, U, atol=1e-12)


def test_zf_rank_deficient():
    v = np.array([1.0, 2.0, 0.5j, 1.0])
    m = _raw_model(np.stack([v, v, v + 1], axis=1), 2)
    with pytest.raises(SingularityError, match="rank 2"):
        zf(m)


def test_zf_too_few_dimensions():
    m = _raw_model(np.ones((2, 3)) + np.eye(2, 3), 1)
    with pytest.raises(SingularityError):
        zf(m)


def test_zf_null_space_random():
    rng = np.random.default_rng(1)
    W = rng.standard_normal((20, 3)) + 1j * rng.standard_normal((20, 3))
    m = _raw_model(W, 3)
    G = zf(m).v.conj().T @ W
    off = G - np.diag(np.diag(G))
    assert np.abs(off).max() < 1e-10
    np.testing.assert_allclose(np.diag(G), 1.0, atol=1e-10)


def test_mmse_reduces_to_mrc_direction():
    rng = np.random.default_rng(2)
    w = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    m = _raw_model(w[:, None], 1)
    v = mmse(m).v[:, 0]
    assert abs(np.vdot(v, w)) / (np.linalg.norm(v) * np.linalg.norm(w)) == pytest.approx(1.0)


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_mmse_dominance(seed):
    m, _ = random_model(seed)
    r_mmse = sinr(m, mmse(m)).sinr
    assert np.all(r_mmse >= sinr(m, mrc(m)).sinr - 1e-9)
    assert np.all(r_mmse >= sinr(m, zf(m)).sinr - 1e-9)


@settings(max_examples=100, deadline=None)
@given(seed=seeds)
def test_mrc_closed_form_matches_quadratic_forms(seed):
    m, ch = random_model(seed)
    a = sinr(m, mrc(m))
    b = mrc_closed_form(ch, m.alpha, m.delta, m.moments, m.noise_variance, m.n_targets)
    for x, y in [(a.desired, b.desired), (a.interference, b.interference),
                 (a.sensor_noise, b.sensor_noise), (a.fc_noise, b.fc_noise)]:
        np.testing.assert_allclose(x, y, rtol=1e-10)


def test_zf_without_clutter_has_no_interference():
    m, _ = random_model(4, N=3, n_targets=3)
    rep = sinr(m, zf(m))
    assert np.all(rep.interference <= 1e-10 * rep.desired)


@settings(max_examples=50, deadline=None)
@given(seed=seeds, c=st.floats(0.01, 100.0))
def test_moment_homogeneity(seed, c):
    m, ch = random_model(seed)
    m2 = assemble(ch, m.alpha, m.delta, c * m.moments, m.noise_variance, m.n_targets)
    bank = mrc(m)
    a, b = sinr(m, bank), sinr(m2, bank)
    np.testing.assert_allclose(b.desired, c * a.desired, rtol=1e-10)
    np.testing.assert_allclose(b.interference, c * a.interference, rtol=1e-9, atol=1e-12)
    np.testing.assert_allclose(b.sensor_noise, a.sensor_noise, rtol=1e-12)
    np.testing.assert_allclose(b.fc_noise, a.fc_noise, rtol=1e-12)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_column_scaling_invariance(seed):
    m, _ = random_model(seed)
    rng = np.random.default_rng(seed)
    scale = rng.uniform(0.1, 10, 2) * np.exp(1j * rng.uniform(0, 6.3, 2))
    for make in (mrc, zf, mmse):
        bank = make(m)
        scaled = CombinerBank(bank.v * scale, bank.kind)
        np.testing.assert_allclose(sinr(m, scaled).sinr, sinr(m, bank).sinr, rtol=1e-9)


@settings(max_examples=50, deadline=None)
@given(seed=seeds)
def test_report_components(seed):
    m, _ = random_model(seed)
    rep = sinr(m, mmse(m))
    for part in (rep.desired, rep.interference, rep.sensor_noise, rep.fc_noise):
        assert np.all(part >= 0)
    np.testing.assert_allclose(rep.sinr, rep.desired / (rep.interference + rep.sensor_noise
                                                        + rep.fc_noise))
    order = np.argsort(rep.sinr)
    assert np.all(np.diff(rep.mutual_information[order]) >= 0)


@settings(max_examples=20, deadline=None)
@given(seed=seeds)
def test_mmse_first_order_optimality(seed):
    m, _ = random_model(seed)
    rng = np.random.default_rng(seed)
    for j in range(m.n_targets):
        # the MSE minimizer is sqrt(delta_j) Q_j times the MMSE column
        v = np.sqrt(m.delta[j]) * m.moments[j] * mmse(m).v[:, j]
        base = combiner_mse(m, v, j)
        for _ in range(10):
            d = rng.standard_normal(v.shape) + 1j * rng.standard_normal(v.shape)
            d *= 1e-4 * np.linalg.norm(v) / np.linalg.norm(d)
            assert combiner_mse(m, v + d, j) >= base - 1e-12


def test_orthogonal_columns_mrc_equals_mmse():
    ch = orthogonal_instance(K=3, R=4, n_objects=3)
    # equal alpha_k ||f_k||^2 keeps the columns orthogonal
    m = assemble(ch, np.full(3, 0.7), [2.0, 1.5, 3.0], [1.0, 2.0, 0.5], 0.5, n_targets=2)
    assert coherence(m.w) < 1e-12
    r_mrc, r_mmse = sinr(m, mrc(m)).sinr, sinr(m, mmse(m)).sinr
    assert np.all(np.abs(r_mrc - r_mmse) / r_mmse < 1e-9)
