"""Small dense linear programs, backed by the HiGHS solver in scipy."""
from __future__ import annotations

import numpy as np
from scipy.optimize import linprog

from ..errors import ConvergenceError, InfeasibleError, UnboundedError


def solve_lp(c, A_ub=None, b_ub=None, bounds=(0, None), A_ge=None, b_ge=None,
             A_eq=None, b_eq=None) -> np.ndarray:
    """Minimize ``c @ x`` subject to ``A_ub x <= b_ub``, ``A_ge x >= b_ge``, ``A_eq x = b_eq``.

    ``bounds`` follows :func:`scipy.optimize.linprog` (a single pair applies to
    every variable). Infeasible and unbounded problems raise distinct errors.
    """
    c = np.asarray(c, dtype=float)
    rows, rhs = [], []
    if A_ub is not None:
        rows.append(np.atleast_2d(np.asarray(A_ub, dtype=float)))
        rhs.append(np.atleast_1d(np.asarray(b_ub, dtype=float)))
    if A_ge is not None:
        rows.append(-np.atleast_2d(np.asarray(A_ge, dtype=float)))
        rhs.append(-np.atleast_1d(np.asarray(b_ge, dtype=float)))
    A = np.vstack(rows) if rows else None
    b = np.concatenate(rhs) if rhs else None
    res = linprog(c, A_ub=A, b_ub=b, A_eq=A_eq, b_eq=b_eq, bounds=bounds,
                  method="highs", options={"primal_feasibility_tolerance": 1e-10,
                                           "dual_feasibility_tolerance": 1e-10})
    if res.status == 2:
        raise InfeasibleError(f"linear program infeasible: {res.message}")
    if res.status == 3:
        raise UnboundedError(f"linear program unbounded: {res.message}")
    if res.status != 0:
        raise ConvergenceError(f"linear program failed: {res.message}")
    return res.x
