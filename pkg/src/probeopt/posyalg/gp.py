"""Geometric programs solved in log-variables with a barrier Newton method.

With ``y = log x`` a posynomial constraint ``sum_k c_k prod x^a_k <= 1``
becomes ``logsumexp(A y + log c) <= 0``, which is convex. The objective is
handled the same way (minimizing ``log f`` is equivalent to minimizing ``f``).
Variable bounds become linear bounds on ``y``; every variable additionally
has a floor of ``VAR_FLOOR`` to keep ``log`` finite.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np
from scipy.optimize import nnls

from ..errors import ConvergenceError, InfeasibleError
from .expressions import Posynomial

VAR_FLOOR = 1e-12
PHASE_ONE_SLACK = 1e-2


@dataclass
class GpProblem:
    """Minimize ``objective`` subject to ``c(x) <= 1`` for every constraint.

    ``upper_bounds`` maps variable names to positive upper limits; variables
    without an entry are only floored at ``VAR_FLOOR``.
    """

    objective: Posynomial
    constraints: list = field(default_factory=list)
    upper_bounds: dict = field(default_factory=dict)

    def variables(self) -> list:
        names = set(self.objective.variables)
        for c in self.constraints:
            names |= c.variables
        names |= set(self.upper_bounds)
        return sorted(names)


@dataclass
class GpSolution:
    point: dict
    objective: float
    kkt_residual: float
    duality_gap: float
    newton_steps: int


class _LseSet:
    """A stack of log-sum-exp functions sharing one variable vector.

    All terms are kept in one matrix so each evaluation is a handful of
    segment reductions instead of one call per constraint.
    """

    def __init__(self, posys, variables):
        parts = [p.to_arrays(variables) for p in posys]
        self.m = len(parts)
        n = len(variables)
        sizes = [A.shape[0] for A, _ in parts]
        self.starts = np.cumsum([0] + sizes[:-1]).astype(int)
        self.seg = np.repeat(np.arange(self.m), sizes)
        self.A = np.vstack([A for A, _ in parts]) if parts else np.zeros((0, n))
        self.b = np.concatenate([b for _, b in parts]) if parts else np.zeros(0)

    def __len__(self):
        return self.m

    def _lse(self, y):
        z = self.A @ y + self.b
        zmax = np.maximum.reduceat(z, self.starts)
        s = np.add.reduceat(np.exp(z - zmax[self.seg]), self.starts)
        return z, zmax + np.log(s)

    def values(self, y):
        return self._lse(y)[1]

    def derivs(self, y):
        """Values, gradients ``(m, n)`` and Hessians ``(m, n, n)``."""
        z, f = self._lse(y)
        w = np.exp(z - f[self.seg])
        Aw = self.A * w[:, None]
        g = np.add.reduceat(Aw, self.starts, axis=0)
        outer = np.einsum("ti,tj->tij", Aw, self.A)
        H = np.add.reduceat(outer, self.starts, axis=0) - np.einsum("mi,mj->mij", g, g)
        return f, g, H


def _barrier_terms(fvals, grads, hess):
    """Gradient and Hessian of ``-sum log(-f_i)`` (all ``f_i < 0``)."""
    inv = -1.0 / fvals
    gb = grads.T @ inv
    Hb = np.einsum("i,ijk->jk", inv, hess) + (grads.T * inv ** 2) @ grads
    return gb, Hb


class _Barrier:
    """Centering problem ``t * obj(y) - sum log(-f_i(y)) - log bound slacks``."""

    def __init__(self, obj, cons, lo, hi):
        self.obj, self.cons, self.lo, self.hi = obj, cons, lo, hi
        self.has_hi = np.isfinite(hi)

    def n_barriers(self):
        return len(self.cons) + self.lo.size + int(self.has_hi.sum())

    def feasible(self, y):
        if np.any(y <= self.lo) or np.any(y[self.has_hi] >= self.hi[self.has_hi]):
            return False
        return len(self.cons) == 0 or bool(np.all(self.cons.values(y) < 0))

    def value(self, y, t):
        if not self.feasible(y):
            return np.inf
        val = t * self.obj(y)
        if len(self.cons):
            val -= np.sum(np.log(-self.cons.values(y)))
        val -= np.sum(np.log(y - self.lo))
        val -= np.sum(np.log(self.hi[self.has_hi] - y[self.has_hi]))
        return val

    def grad_hess(self, y, t):
        g0, H0 = self.obj.grad_hess(y)
        g, H = t * g0, t * H0
        if len(self.cons):
            f, gc, Hc = self.cons.derivs(y)
            gb, Hb = _barrier_terms(f, gc, Hc)
            g, H = g + gb, H + Hb
        d = y - self.lo
        g -= 1.0 / d
        H += np.diag(1.0 / d ** 2)
        u = np.zeros_like(y)
        u[self.has_hi] = self.hi[self.has_hi] - y[self.has_hi]
        inv = np.zeros_like(y)
        inv[self.has_hi] = 1.0 / u[self.has_hi]
        g += inv
        H += np.diag(inv ** 2)
        return g, H


def _logsumexp(z):
    zmax = z.max()
    return zmax + np.log(np.exp(z - zmax).sum())


class _LseObjective:
    def __init__(self, A, b):
        self.A, self.b = A, b

    def __call__(self, y):
        return _logsumexp(self.A @ y + self.b)

    def grad_hess(self, y):
        z = self.A @ y + self.b
        w = np.exp(z - _logsumexp(z))
        g = self.A.T @ w
        return g, (self.A.T * w) @ self.A - np.outer(g, g)


class _LinearObjective:
    def __init__(self, c):
        self.c = c

    def __call__(self, y):
        return float(self.c @ y)

    def grad_hess(self, y):
        return self.c, np.zeros((self.c.size, self.c.size))


def _center(barrier, y, t, max_steps, stop=None):
    """Damped Newton on the barrier function; returns (y, steps)."""
    steps = 0
    for _ in range(max_steps):
        g, H = barrier.grad_hess(y, t)
        H = 0.5 * (H + H.T)
        try:
            dy = -np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            dy = -np.linalg.lstsq(H, g, rcond=None)[0]
        dec2 = float(-g @ dy)
        steps += 1
        if dec2 / 2.0 <= 1e-10:
            break
        f0 = barrier.value(y, t)
        s = 1.0
        while s > 1e-14:
            yn = y + s * dy
            fn = barrier.value(yn, t)
            if fn <= f0 - 0.25 * s * dec2:
                break
            s *= 0.5
        else:
            break
        y = yn
        if f0 - fn <= 1e-13 * abs(f0):      # roundoff floor
            break
        if stop is not None and stop(y):
            break
    return y, steps


def _kkt_residual(obj, cons, y, lo, hi, active_tol=1e-6):
    """Stationarity plus primal residual of the log-space problem.

    Multipliers of the near-active constraints and bounds are fitted by
    nonnegative least squares, so the residual certifies the point itself
    rather than the barrier path that produced it.
    """
    g0, _ = obj.grad_hess(y)
    cols = []
    viol = 0.0
    if len(cons):
        f, gc, _ = cons.derivs(y)
        viol = max(viol, float(f.max()))
        cols.extend(gc[f >= -active_tol])
    eye = np.eye(y.size)
    cols.extend(-eye[y - lo <= active_tol])
    fin = np.isfinite(hi)
    cols.extend(eye[fin & (hi - y <= active_tol)])
    if cols:
        C = np.array(cols).T
        lam, _ = nnls(C, -g0)
        r = g0 + C @ lam
    else:
        r = g0
    return max(float(np.linalg.norm(r, np.inf)), viol)


def _phase_one(cons, lo, hi, y0, tol, max_steps):
    """Find ``y`` strictly inside all constraints, or certify infeasibility.

    Solves ``min s  s.t. f_i(y) <= s`` in the box, stopping once every
    constraint has a slack of ``PHASE_ONE_SLACK`` (in log units) or the
    deepest point is found. Returns ``(y, s_star)``.
    """
    n = y0.size
    fmax = float(cons.values(y0).max())
    s_floor = min(fmax, 0.0) - 1.0

    class _Shifted:
        def __len__(self):
            return len(cons)

        def values(self, z):
            y, s = z[:n], z[n]
            return cons.values(y) - s

        def derivs(self, z):
            y = z[:n]
            f, g, H = cons.derivs(y)
            m = f.size
            gz = np.hstack([g, -np.ones((m, 1))])
            Hz = np.zeros((m, n + 1, n + 1))
            Hz[:, :n, :n] = H
            return f - z[n], gz, Hz

    c = np.zeros(n + 1)
    c[n] = 1.0
    obj = _LinearObjective(c)
    lo_z = np.append(lo, s_floor)
    hi_z = np.append(hi, np.inf)
    shifted = _Shifted()
    barrier = _Barrier(obj, shifted, lo_z, hi_z)
    z = np.append(y0, fmax + 1.0)
    t = 1.0
    m_tot = barrier.n_barriers()
    total = 0

    def done(z):
        return float(cons.values(z[:n]).max()) < -PHASE_ONE_SLACK

    for _ in range(200):
        z, k = _center(barrier, z, t, max_steps, stop=done)
        total += k
        if done(z):
            return z[:n], float(cons.values(z[:n]).max())
        if m_tot / t < tol:
            break
        t *= 20.0
    return z[:n], float(cons.values(z[:n]).max())


def solve_gp(problem: GpProblem, start: Mapping[str, float] | None = None,
             tol: float = 1e-9, max_iter: int = 200) -> GpSolution:
    """Solve a geometric program to a duality-gap tolerance ``tol``.

    ``max_iter`` caps the Newton steps per centering. Raises
    :class:`InfeasibleError` (with the smallest relative violation found) when
    no point satisfies the constraints, and :class:`ConvergenceError` when the
    outer loop stalls.
    """
    names = problem.variables()
    n = len(names)
    lo = np.full(n, math.log(VAR_FLOOR))
    hi = np.full(n, np.inf)
    for i, v in enumerate(names):
        if v in problem.upper_bounds:
            ub = float(problem.upper_bounds[v])
            if not ub > VAR_FLOOR:
                raise InfeasibleError(f"upper bound on {v} below the variable floor")
            hi[i] = math.log(ub)
    cons = _LseSet([c for c in problem.constraints if c], names)
    A0, b0 = problem.objective.to_arrays(names)
    obj = _LseObjective(A0, b0)

    y = np.zeros(n)
    if start is not None:
        y = np.array([math.log(max(float(start.get(v, 1.0)), VAR_FLOOR)) for v in names])
    # strictly inside the box
    width = np.where(np.isfinite(hi), hi - lo, np.inf)
    margin = np.minimum(1e-7, width / 4.0)
    y = np.clip(y, lo + margin, np.where(np.isfinite(hi), hi - margin, np.inf))

    shift = 0.0
    if len(cons) and not np.all(cons.values(y) < -PHASE_ONE_SLACK):
        y, s_star = _phase_one(cons, lo, hi, y, tol=1e-10, max_steps=max_iter)
        if s_star >= 0:
            if s_star > 1e-9:
                raise InfeasibleError(
                    f"geometric program infeasible, max relative violation "
                    f"{math.expm1(s_star):.3e}", max_violation=math.expm1(s_star))
            # boundary-feasible only: relax by a hair so the barrier has an interior
            shift = s_star + 1e-10
            cons = _LseSet([c * math.exp(-shift) for c in problem.constraints if c], names)

    barrier = _Barrier(obj, cons, lo, hi)
    m_tot = barrier.n_barriers()
    t = max(1.0, m_tot / max(abs(obj(y)), 1.0))
    steps = 0
    for _ in range(100):
        y, k = _center(barrier, y, t, max_iter)
        steps += k
        if m_tot / t < tol:
            break
        t *= 20.0
    else:
        raise ConvergenceError("barrier method did not reach the duality-gap tolerance")
    x = np.exp(y)
    return GpSolution(
        point=dict(zip(names, x.tolist())),
        objective=float(np.exp(obj(y))),
        kkt_residual=_kkt_residual(obj, cons, y, lo, hi),
        duality_gap=m_tot / t,
        newton_steps=steps,
    )
