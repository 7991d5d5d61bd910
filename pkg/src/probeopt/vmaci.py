"""Virtual multiple-access channel seen by the fusion center.

The K time-slot forwards are stacked into one ``K*R`` dimensional observation.
Block ``k`` (rows ``k*R:(k+1)*R``) belongs to sensor ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import block_diag

from .errors import ConfigurationError, DegenerateInputError
from .scene import ChannelSet, Scenario
from .txmodel import coupling_for, delta_profile


@dataclass(frozen=True)
class VmaciModel:
    w: np.ndarray           # (KR, N) equivalent channel columns
    noise_cov: np.ndarray   # (KR, KR) covariance of the forwarded noise
    delta: np.ndarray       # (N,) received power per object
    moments: np.ndarray     # (N,) second moments Q_i
    alpha: np.ndarray       # (K,)
    noise_variance: float
    n_targets: int

    @property
    def n_objects(self) -> int:
        return self.w.shape[1]

    @property
    def virtual_power(self) -> np.ndarray:
        """Power ``delta_i * Q_i`` of each virtual transmitter."""
        return self.delta * self.moments

    def signal_cov(self) -> np.ndarray:
        """``sum_i delta_i Q_i w_i w_i^H``."""
        return (self.w * self.virtual_power) @ self.w.conj().T

    def sensor_noise_cov(self) -> np.ndarray:
        return self.noise_cov - self.noise_variance * np.eye(self.noise_cov.shape[0])


def equivalent_channels(channels: ChannelSet, alpha) -> np.ndarray:
    """Stack ``sqrt(alpha_k) g_ik f_k`` over sensors for every object."""
    alpha = np.asarray(alpha, dtype=float)
    K, R = channels.f.shape
    # (K, R, N) -> (KR, N)
    blocks = np.sqrt(alpha)[:, None, None] * channels.f[:, :, None] * channels.g.T[:, None, :]
    return blocks.reshape(K * R, -1)


def noise_covariance(channels: ChannelSet, alpha, sigma2: float) -> np.ndarray:
    """Block-diagonal ``alpha_k sigma2 f_k f_k^H`` plus white fusion-center noise."""
    alpha = np.asarray(alpha, dtype=float)
    blocks = [a * sigma2 * np.outer(fk, fk.conj()) for a, fk in zip(alpha, channels.f)]
    cov = block_diag(*blocks)
    return cov + sigma2 * np.eye(cov.shape[0])


def assemble(channels: ChannelSet, alpha, delta, moments, noise_variance: float,
             n_targets: int | None = None) -> VmaciModel:
    alpha = np.asarray(alpha, dtype=float)
    delta = np.asarray(delta, dtype=float)
    moments = np.asarray(moments, dtype=float)
    K, _ = channels.f.shape
    N = channels.g.shape[0]
    if alpha.shape != (K,):
        raise ConfigurationError(f"alpha has shape {alpha.shape}, expected ({K},)")
    if delta.shape != (N,) or moments.shape != (N,):
        raise ConfigurationError("delta and moments need one entry per object")
    if np.any(alpha <= 0):
        raise ConfigurationError("amplification factors must be strictly positive")
    return VmaciModel(
        w=equivalent_channels(channels, alpha),
        noise_cov=noise_covariance(channels, alpha, noise_variance),
        delta=delta,
        moments=moments,
        alpha=alpha,
        noise_variance=float(noise_variance),
        n_targets=N if n_targets is None else int(n_targets),
    )


def model_for(scenario: Scenario, channels: ChannelSet, p, alpha,
              moments=None, coupling=None) -> VmaciModel:
    """Assemble the model for transmit powers ``p`` and amplifications ``alpha``."""
    if coupling is None:
        coupling = coupling_for(scenario)
    if moments is None:
        moments = scenario.moments
    return assemble(channels, alpha, delta_profile(coupling, p), moments,
                    scenario.noise_variance, scenario.n_targets)


def coherence(w) -> float:
    """Largest normalized inner product between two distinct columns of ``w``."""
    w = np.asarray(w)
    if w.ndim != 2 or w.shape[1] < 2:
        raise DegenerateInputError("coherence needs at least two columns")
    norms = np.linalg.norm(w, axis=0)
    if np.any(norms == 0):
        raise DegenerateInputError("coherence undefined for a zero column")
    gram = np.abs(w.conj().T @ w) / np.outer(norms, norms)
    np.fill_diagonal(gram, 0.0)
    return float(min(gram.max(), 1.0))
