"""Recursive resource design and second-moment acquisition.

Each round optimizes (p, alpha) for the current moment estimates, observes
the fusion-center outputs ``z_j`` over many snapshots and re-estimates the
target moments from the output variances. Channels stay fixed across
snapshots and rounds; reflections and noise are redrawn per snapshot.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateInputError, InfeasibleError
from .optimizers import OptimizerOptions, run_algorithm
from .receivers import COMBINERS, CombinerBank
from .scene import ChannelSet, Scenario, complex_normal
from .txmodel import coupling_for
from .vmaci import VmaciModel, model_for

MOMENT_FLOOR = 1e-9


def fusion_outputs(model: VmaciModel, bank: CombinerBank, count: int, seed) -> np.ndarray:
    """Combiner outputs ``z_j = v_j^H (sum_i sqrt(delta_i) l_i w_i + n')``, shape ``(N_t, count)``.

    ``l_i ~ CN(0, Q_i)`` with ``Q`` taken from ``model.moments`` (zero is
    allowed) and ``n' ~ CN(0, Sigma_n)``.
    """
    if count < 1:
        raise DegenerateInputError("snapshot count must be >= 1")
    rng = np.random.default_rng(seed)
    N = model.n_objects
    KR = model.w.shape[0]
    refl = complex_normal(rng, (N, count)) * np.sqrt(model.moments)[:, None]
    signal = model.w @ (np.sqrt(model.delta)[:, None] * refl)
    L = np.linalg.cholesky(0.5 * (model.noise_cov + model.noise_cov.conj().T))
    noise = L @ complex_normal(rng, (KR, count))
    return bank.v.conj().T @ (signal + noise)


def simulate_snapshots(scenario: Scenario, channels: ChannelSet, p, alpha,
                       bank: CombinerBank, count: int, seed) -> np.ndarray:
    """Fusion-center outputs for the scenario's true second moments."""
    model = model_for(scenario, channels, p, alpha)
    return fusion_outputs(model, bank, count, seed)


def output_power_matrix(model: VmaciModel, bank: CombinerBank) -> np.ndarray:
    """``P[j, i] = delta_i |v_j^H w_i|^2``: contribution of unit ``Q_i`` to ``var(z_j)``."""
    return np.abs(bank.v.conj().T @ model.w) ** 2 * model.delta


def output_noise(model: VmaciModel, bank: CombinerBank) -> np.ndarray:
    """``v_j^H Sigma_n v_j`` for every target."""
    V = bank.v
    return np.real(np.einsum("kj,kl,lj->j", V.conj(), model.noise_cov, V))


def estimate_moments(samples, model: VmaciModel, bank: CombinerBank,
                     floor: float = MOMENT_FLOOR) -> np.ndarray:
    """Moment-matching estimate of the target second moments.

    The mean output power ``mean |z_j|^2`` is matched to
    ``sum_t P[j, t] Q_t + sum_c P[j, c] Q_c + v_j^H Sigma_n v_j`` with the
    clutter moments ``Q_c`` taken from ``model`` as side information. The
    target moments solve this small linear system jointly; each estimate is
    floored at ``floor``.
    """
    z = np.atleast_2d(np.asarray(samples))
    if z.shape[1] < 2:
        raise DegenerateInputError("need at least 2 samples per target")
    nt = model.n_targets
    power = np.mean(np.abs(z) ** 2, axis=1)
    P = output_power_matrix(model, bank)
    rhs = power - output_noise(model, bank) - P[:, nt:] @ model.moments[nt:]
    A = P[:, :nt]
    try:
        q = np.linalg.solve(A, rhs)
    except np.linalg.LinAlgError:
        q = np.linalg.lstsq(A, rhs, rcond=None)[0]
    return np.maximum(q, floor)


@dataclass
class CharacterizationOptions:
    algorithm: str = "mmse-alt"
    receiver: str = "mmse"          # used by max-amp only
    snapshots: int = 10_000
    q_tol: float = 0.05             # relative change of the estimates between rounds
    max_rounds: int = 10
    seed: int = 0
    optimizer: OptimizerOptions | None = None


@dataclass
class CharacterizationRound:
    q_estimates: np.ndarray
    p: np.ndarray
    alpha: np.ndarray
    snapshots_used: int
    objective: float


@dataclass
class CharacterizationTrace:
    rounds: list = field(default_factory=list)
    converged: bool = False

    @property
    def final(self) -> np.ndarray:
        return self.rounds[-1].q_estimates


def recursive_characterization(scenario: Scenario, channels: ChannelSet,
                               opts: CharacterizationOptions | None = None
                               ) -> CharacterizationTrace:
    """Alternate resource optimization and moment estimation, starting from ``Q = 1``.

    ``scenario`` carries the true moments used to draw the reflections; the
    optimizer and the combiners only see the current estimates (clutter
    moments are treated as known). Stops when every estimate moves by less
    than ``q_tol`` relative, or after ``max_rounds``.
    """
    opts = opts or CharacterizationOptions()
    nt = scenario.n_targets
    truth = scenario.moments
    coupling = coupling_for(scenario)
    q_hat = np.ones(nt)
    trace = CharacterizationTrace()
    for r in range(opts.max_rounds):
        believed = scenario.with_moments(np.concatenate([q_hat, truth[nt:]]))
        res = run_algorithm(opts.algorithm, believed, channels, opts.optimizer, opts.receiver)
        if not res.feasible:
            raise InfeasibleError(f"round {r + 1}: {res.message}",
                                  max_violation=res.max_violation)
        bank = COMBINERS[res.receiver](
            model_for(believed, channels, res.p, res.alpha, coupling=coupling))
        true_model = model_for(scenario, channels, res.p, res.alpha, coupling=coupling)
        z = fusion_outputs(true_model, bank, opts.snapshots, [opts.seed, r])
        new = estimate_moments(z, true_model, bank)
        trace.rounds.append(CharacterizationRound(new, res.p, res.alpha, opts.snapshots,
                                                  res.objective))
        change = np.max(np.abs(new - q_hat) / q_hat)
        q_hat = new
        if change < opts.q_tol:
            trace.converged = True
            break
    return trace
