"""Linear combiners at the fusion center and the SINR they achieve."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cho_factor, cho_solve

from .errors import SingularityError
from .scene import ChannelSet
from .vmaci import VmaciModel

ZF_RCOND = 1e-12


@dataclass(frozen=True)
class CombinerBank:
    v: np.ndarray   # (KR, N_t)
    kind: str


@dataclass(frozen=True)
class SinrReport:
    desired: np.ndarray
    interference: np.ndarray
    sensor_noise: np.ndarray
    fc_noise: np.ndarray

    @property
    def sinr(self) -> np.ndarray:
        return self.desired / (self.interference + self.sensor_noise + self.fc_noise)

    @property
    def mutual_information(self) -> np.ndarray:
        """Bits per observation, ``log2(1 + sinr)``."""
        return np.log2(1.0 + self.sinr)

    @property
    def total_variance(self) -> np.ndarray:
        """Variance of the combiner output ``z_j``."""
        return self.desired + self.interference + self.sensor_noise + self.fc_noise


def mrc(model: VmaciModel) -> CombinerBank:
    return CombinerBank(model.w[:, :model.n_targets].copy(), "mrc")


def zf(model: VmaciModel) -> CombinerBank:
    """Null every other object, target or clutter: ``V = W (W^H W)^-1``."""
    W = model.w
    KR, N = W.shape
    s = np.linalg.svd(W, compute_uv=False)
    rank = int(np.sum(s > ZF_RCOND * s[0])) if s.size and s[0] > 0 else 0
    if KR < N or rank < N:
        raise SingularityError(
            f"zero-forcing needs full column rank {N}, W has rank {rank}", rank=rank)
    V = np.linalg.solve(W.conj().T @ W, W.conj().T).conj().T
    return CombinerBank(V[:, :model.n_targets], "zf")


def mmse(model: VmaciModel) -> CombinerBank:
    """``v_j = (sum_i delta_i Q_i w_i w_i^H + Sigma_n)^-1 w_j`` via a Cholesky solve."""
    C = model.signal_cov() + model.noise_cov
    C = 0.5 * (C + C.conj().T)
    V = cho_solve(cho_factor(C, lower=True), model.w[:, :model.n_targets])
    return CombinerBank(V, "mmse")


COMBINERS = {"mrc": mrc, "zf": zf, "mmse": mmse}


def sinr(model: VmaciModel, bank: CombinerBank) -> SinrReport:
    """Evaluate the four variance terms as quadratic forms in ``v_j``."""
    V = bank.v
    n_t = V.shape[1]
    # |v_j^H w_i|^2 for every target j and object i
    proj = np.abs(V.conj().T @ model.w) ** 2            # (N_t, N)
    power = proj * model.virtual_power                  # (N_t, N)
    desired = power[np.arange(n_t), np.arange(n_t)].copy()
    interference = power.sum(axis=1) - desired
    sensor_cov = model.sensor_noise_cov()
    sensor = np.real(np.einsum("kj,kl,lj->j", V.conj(), sensor_cov, V))
    fc = model.noise_variance * np.sum(np.abs(V) ** 2, axis=0)
    return SinrReport(desired, np.maximum(interference, 0.0), np.maximum(sensor, 0.0), fc)


def mrc_closed_form(channels: ChannelSet, alpha, delta, moments, sigma2: float,
                    n_targets: int) -> SinrReport:
    """MRC variance terms written directly in the channel gains.

    Independent of :func:`sinr`; the two agree when the bank is ``mrc``.
    """
    alpha = np.asarray(alpha, dtype=float)
    delta = np.asarray(delta, dtype=float)
    moments = np.asarray(moments, dtype=float)
    fsq = channels.f_sq_norms
    g = channels.g
    e = delta * moments
    des, intf, ns, nfc = (np.zeros(n_targets) for _ in range(4))
    for j in range(n_targets):
        b = alpha * np.abs(g[j]) ** 2 * fsq
        des[j] = e[j] * b.sum() ** 2
        cross = np.abs((alpha * g[j] * g.conj() * fsq).sum(axis=1)) ** 2   # (N,)
        intf[j] = sum(e[i] * cross[i] for i in range(len(e)) if i != j)
        ns[j] = sigma2 * np.sum(alpha ** 2 * np.abs(g[j]) ** 2 * fsq ** 2)
        nfc[j] = sigma2 * b.sum()
    return SinrReport(des, intf, ns, nfc)


def combiner_mse(model: VmaciModel, v, j: int) -> float:
    """Mean squared error ``E|l_j - z_j|^2`` of combiner ``v`` for target ``j``.

    Minimized by ``sqrt(delta_j) Q_j`` times the MMSE column.
    """
    v = np.asarray(v)
    C = model.signal_cov() + model.noise_cov
    cross = np.sqrt(model.delta[j]) * model.moments[j] * (v.conj() @ model.w[:, j])
    return float(model.moments[j] - 2.0 * cross.real + np.real(v.conj() @ C @ v))
