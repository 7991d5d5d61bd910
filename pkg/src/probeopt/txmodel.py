"""Maximum-ratio transmission and the power delivered to each object."""
from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError
from .scene import Scenario, steering_vectors


def mrt_filters(steering) -> list:
    """Unit-norm beam directions ``a_j / ||a_j||``, one per target steering vector."""
    out = []
    for j, a in enumerate(steering):
        a = np.asarray(a, dtype=complex)
        nrm = np.linalg.norm(a)
        if nrm == 0:
            raise DegenerateInputError(f"steering vector {j} has zero norm")
        out.append(a / nrm)
    return out


def delta_coupling_matrix(steering, filters) -> np.ndarray:
    """Non-negative ``(N, N_t)`` matrix mapping target powers to received powers.

    Row ``i`` gives the power landing on object ``i`` per unit of power in each
    target beam, ``|a_i^H u_t|**2``. For a target's own beam this equals
    ``nu_i * M * M'`` since ``u_i`` is aligned with ``a_i``.

    Parameters
    ----------
    steering : sequence of (MM',) complex arrays
        Steering vectors of all objects, targets first.
    filters : sequence of (MM',) complex arrays
        MRT filters of the targets.
    """
    A = np.asarray(steering, dtype=complex)      # (N, MM')
    U = np.asarray(filters, dtype=complex)       # (N_t, MM')
    return np.abs(A.conj() @ U.T) ** 2


def coupling_for(scenario: Scenario) -> np.ndarray:
    steer = steering_vectors(scenario)
    return delta_coupling_matrix(steer, mrt_filters(steer[:scenario.n_targets]))


def delta_profile(coupling: np.ndarray, p) -> np.ndarray:
    """Received power ``delta_i`` at every object for target powers ``p``."""
    return coupling @ np.asarray(p, dtype=float)

