"""Symbolic SINR terms of a maximum-ratio-combining receiver.

Variables are named ``p1..pNt`` (transmit power per target) and
``alpha1..alphaK`` (sensor amplification), both 1-based.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..scene import ChannelSet, Scenario
from ..txmodel import coupling_for
from .expressions import Monomial, Posynomial, Signomial


def p_name(t: int) -> str:
    return f"p{t + 1}"


def alpha_name(k: int) -> str:
    return f"alpha{k + 1}"


def delta_posynomial(coupling_row) -> Posynomial:
    """Received power at one object as a posynomial in the target powers."""
    return Posynomial(Monomial(c, {p_name(t): 1}) for t, c in enumerate(coupling_row) if c > 0)


def pair_gain(channels: ChannelSet, j: int, i: int) -> Signomial:
    """``|sum_k alpha_k g_jk conj(g_ik) ||f_k||^2|^2`` expanded into ``K^2`` monomials.

    Diagonal ``k == l`` terms are always positive; the ``k != l`` pair collapses
    to ``2 alpha_k alpha_l ||f_k||^2 ||f_l||^2 Re{g_jk g_ik* g_jl* g_il}``.
    """
    g, fsq = channels.g, channels.f_sq_norms
    K = g.shape[1]
    terms = []
    for k in range(K):
        c = fsq[k] ** 2 * abs(g[j, k]) ** 2 * abs(g[i, k]) ** 2
        if c > 0:
            terms.append(Monomial(c, {alpha_name(k): 2}))
        for l in range(k + 1, K):
            c = 2.0 * fsq[k] * fsq[l] * np.real(
                g[j, k] * np.conj(g[i, k]) * np.conj(g[j, l]) * g[i, l])
            if c != 0:
                terms.append(Monomial(c, {alpha_name(k): 1, alpha_name(l): 1}))
    return Signomial.from_terms(terms)


def phase_condition(channels: ChannelSet, j: int, i: int) -> bool:
    """True when every cross product ``g_jk g_jl* g_ik* g_il`` (k != l) lies in the right half-plane.

    Its angle is then within ``pi/2`` of a multiple of ``2 pi`` and the
    interference that object ``i`` causes to target ``j`` is a posynomial.
    """
    g = channels.g
    prod = np.outer(g[j] * np.conj(g[i]), np.conj(g[j]) * g[i])   # [k, l]
    off = ~np.eye(g.shape[1], dtype=bool)
    return bool(np.all(np.real(prod[off]) >= 0))


@dataclass(frozen=True)
class MrcConstraint:
    """SINR demand ``psi`` of one target written as ``numerator / denominator <= 1``."""

    target: int
    psi: float
    desired: Posynomial
    interference: Signomial
    sensor_noise: Posynomial
    fc_noise: Posynomial

    @property
    def numerator(self) -> Posynomial:
        return (self.interference.plus + self.sensor_noise + self.fc_noise) * self.psi

    @property
    def denominator(self) -> Posynomial:
        return self.desired + self.interference.minus * self.psi

    def sinr(self, point) -> float:
        noise = self.interference(point) + self.sensor_noise(point) + self.fc_noise(point)
        return self.desired(point) / noise


def build_mrc_constraint(scenario: Scenario, channels: ChannelSet, j: int,
                         coupling=None, moments=None) -> MrcConstraint:
    if coupling is None:
        coupling = coupling_for(scenario)
    Q = scenario.moments if moments is None else np.asarray(moments, dtype=float)
    g, fsq = channels.g, channels.f_sq_norms
    sigma2 = scenario.noise_variance
    K = g.shape[1]
    b = np.abs(g[j]) ** 2 * fsq                  # b_jk

    gain = Posynomial(Monomial(b[k], {alpha_name(k): 1}) for k in range(K) if b[k] > 0)
    desired = delta_posynomial(coupling[j]) * gain * gain * Q[j]

    interference = Signomial()
    for i in range(scenario.n_objects):
        if i == j:
            continue
        delta_i = delta_posynomial(coupling[i])
        if not delta_i:
            continue
        interference = interference + pair_gain(channels, j, i) * delta_i * Q[i]

    sensor_noise = Posynomial(
        Monomial(sigma2 * b[k] * fsq[k], {alpha_name(k): 2}) for k in range(K) if b[k] > 0)
    fc_noise = gain * sigma2
    return MrcConstraint(j, scenario.sinr_demands[j], desired, interference,
                         sensor_noise, fc_noise)


def build_mrc_constraints(scenario: Scenario, channels: ChannelSet, coupling=None,
                          moments=None) -> list:
    return [build_mrc_constraint(scenario, channels, j, coupling, moments)
            for j in range(scenario.n_targets)]
