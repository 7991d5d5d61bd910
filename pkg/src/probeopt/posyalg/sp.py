"""Signomial programs by successive condensation.

Each constraint ``num / den <= 1`` with posynomial ``den`` is made a GP
constraint by replacing ``den`` with its monomial lower bound at the current
point. The bound is tight there, so the current point stays feasible and the
objective cannot increase from one round to the next.

When the optimum puts a variable at the floor, plain condensation only
shrinks that variable by a bounded factor per round and the objective
creeps down for many rounds. With ``boundary_moves`` a variable that keeps
shrinking is tentatively pinned at the floor: the reduced problem is solved
once, condensed at the current point, and the move is kept only when the
result satisfies the original constraints and lowers the objective.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import ConvergenceError, InfeasibleError
from .expressions import Posynomial, condense
from .gp import VAR_FLOOR, GpProblem, solve_gp

SHRINK_RATIO = 0.9      # two-round shrink factor that makes a variable a floor candidate
RETRY_GAP = 5           # rounds before a rejected candidate is tried again


@dataclass
class SpOutcome:
    point: dict
    trace: list = field(default_factory=list)
    converged: bool = False
    pinned: tuple = ()          # variables moved to the floor by boundary moves

    @property
    def iterations(self) -> int:
        return len(self.trace)


def condensed_constraints(ratios, point) -> list:
    out = []
    for num, den in ratios:
        if not num:
            continue
        out.append(num * condense(den, point) ** -1)
    return out


def satisfies(ratios, extra_constraints, point, upper_bounds=None, slack: float = 0.0) -> bool:
    """True when ``point`` meets every ratio and posynomial constraint and bound."""
    for name, ub in (upper_bounds or {}).items():
        if name in point and point[name] > ub:
            return False
    for num, den in ratios:
        if num and num(point) > (1.0 + slack) * den(point):
            return False
    return all(c(point) <= 1.0 + slack for c in extra_constraints)


class _Reduced:
    """The problem with some variables fixed at the floor."""

    def __init__(self, objective, ratios, extra, upper_bounds, fixed):
        self.fixed = dict(fixed)
        sub = self.fixed
        self.objective = objective.substitute(sub)
        self.ratios = [(n.substitute(sub), d.substitute(sub)) for n, d in ratios]
        self.extra = [c.substitute(sub) for c in extra]
        self.upper_bounds = {k: v for k, v in upper_bounds.items() if k not in sub}

    def usable(self) -> bool:
        return all(d or not n for n, d in self.ratios)

    def solve(self, point, gp_tol, gp_max_iter):
        free = {k: v for k, v in point.items() if k not in self.fixed}
        cons = condensed_constraints(self.ratios, free) + self.extra
        sol = solve_gp(GpProblem(self.objective, cons, self.upper_bounds), start=free,
                       tol=gp_tol, max_iter=gp_max_iter)
        return {**sol.point, **self.fixed}, sol.objective


def _floor_candidate(history, fixed, tried, round_no):
    """Variable with the strongest steady shrink over the last two rounds, if any."""
    if len(history) < 3:
        return None
    a, b, c = history[-3:]
    best, best_ratio = None, SHRINK_RATIO
    for v in c:
        if v in fixed or round_no - tried.get(v, -RETRY_GAP) < RETRY_GAP:
            continue
        if not (c[v] < b[v] < a[v]) or c[v] <= 10.0 * VAR_FLOOR:
            continue
        ratio = c[v] / a[v]
        if ratio < best_ratio:
            best, best_ratio = v, ratio
    return best


def successive_condensation(objective: Posynomial, ratios, point, upper_bounds=None,
                            extra_constraints=(), tol: float = 1e-4,
                            max_outer: int = 100, gp_tol: float = 1e-9,
                            gp_max_iter: int = 200, boundary_moves: bool = False,
                            lagged: bool = False, stop=None) -> SpOutcome:
    """Minimize ``objective`` subject to ``num / den <= 1`` for every ``(num, den)`` in ``ratios``.

    ``point`` must satisfy the original constraints. Stops when the relative
    change of the objective drops below ``tol``; with ``lagged`` the test looks
    at the change one round earlier, so one extra round runs. ``stop(point)``
    may end the loop early.
    """
    upper_bounds = dict(upper_bounds or {})
    extra = list(extra_constraints)
    x = dict(point)
    problem = _Reduced(objective, ratios, extra, upper_bounds, {})
    history = [x]
    tried = {}
    hist = [objective(x)]
    out = SpOutcome(point=x)
    for q in range(max_outer):
        x, val = problem.solve(x, gp_tol, gp_max_iter)
        if boundary_moves:
            history.append(x)
            v = _floor_candidate(history, problem.fixed, tried, q)
            if v is not None:
                tried[v] = q
                trial = _Reduced(objective, ratios, extra, upper_bounds,
                                 {**problem.fixed, v: VAR_FLOOR})
                if trial.usable():
                    try:
                        x_t, val_t = trial.solve(x, gp_tol, gp_max_iter)
                    except (InfeasibleError, ConvergenceError):
                        x_t = None
                    if (x_t is not None and val_t < val
                            and satisfies(ratios, extra, x_t, upper_bounds)):
                        problem, x, val = trial, x_t, val_t
                        history = [x]
        out.point = x
        out.trace.append(val)
        hist.append(val)
        lag = 1 if lagged else 0
        a, b = hist[-2 - lag:len(hist) - lag] if len(hist) >= 2 + lag else (None, None)
        if a is not None and abs(a - b) <= tol * max(b, 1e-300):
            out.converged = True
            break
        if stop is not None and stop(x):
            out.converged = True
            break
    out.pinned = tuple(sorted(problem.fixed))
    return out
