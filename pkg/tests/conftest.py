import numpy as np
import pytest

from probeopt.scene import (ArrayGeometry, ChannelSet, Scenario, SceneObject,
                            reference_scenario, synthesize_channels)
from probeopt.vmaci import assemble


def random_channels(rng, N, K, R):
    cn = lambda *s: (rng.standard_normal(s) + 1j * rng.standard_normal(s)) / np.sqrt(2)
    return ChannelSet(g=cn(N, K), f=cn(K, R))


def random_model(seed, N=3, n_targets=2, K=4, R=5, sigma2=0.5):
    """Random VMACI model with positive alpha, delta and moments."""
    rng = np.random.default_rng(seed)
    ch = random_channels(rng, N, K, R)
    alpha = rng.uniform(0.1, 2.0, K)
    delta = rng.uniform(0.1, 5.0, N)
    moments = rng.uniform(0.5, 2.0, N)
    return assemble(ch, alpha, delta, moments, sigma2, n_targets), ch


def single_target_scenario(K=2, R=1, psi=1.0, **kw):
    return Scenario(array=ArrayGeometry(2, 2),
                    objects=[SceneObject(20.0, 40.0, 1.0, "target", 1.0)],
                    sensor_count=K, fusion_antennas=R, sinr_demands=[psi], **kw)


def orthogonal_instance(K=3, R=4, n_objects=2, seed=5, fnorm_sq=2.0):
    """Rows of g from a K-point DFT and equal ||f_k||^2: columns of W are
    orthogonal whenever alpha_k ||f_k||^2 is the same for every sensor."""
    D = np.exp(-2j * np.pi * np.outer(np.arange(K), np.arange(K)) / K)
    rng = np.random.default_rng(seed)
    f = rng.standard_normal((K, R)) + 1j * rng.standard_normal((K, R))
    f = f / np.linalg.norm(f, axis=1, keepdims=True) * np.sqrt(fnorm_sq)
    return ChannelSet(g=D[:n_objects].copy(), f=f)


@pytest.fixture(scope="session")
def ref_near():
    return reference_scenario(0.5)


@pytest.fixture(scope="session")
def ref_far():
    return reference_scenario(2.0)


@pytest.fixture(scope="session")
def ref_channels(ref_near):
    return [synthesize_channels(ref_near, s) for s in range(10)]


# one line per acceptance criterion, filled in by test_acceptance
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        terminalreporter.write_line(ACCEPTANCE[key])
