"""Transmit-power and sensor-amplification allocation.

All procedures minimize ``sum(p) + sum(alpha)`` subject to per-target SINR
demands, ``sum(p) <= p_max`` and ``alpha_k <= alpha_max``:

* :func:`mrc_joint` optimizes both jointly for an MRC fusion center by
  successive condensation of the signomial SINR constraints.
* :func:`mmse_alternating` / :func:`zf_alternating` alternate a power LP, a
  combiner update and an amplification signomial program.
* :func:`max_amp_baseline` fixes ``alpha = alpha_max`` and optimizes power only.
* :func:`asymptotic_power_opt` drops interference (orthogonal channels) and
  fixes ``alpha = alpha_max``, leaving a power LP.

Results are always in linear scale; :attr:`OptimizationResult.objective_db`
is a convenience view.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConvergenceError, InfeasibleError
from .posyalg.expressions import Monomial, Posynomial, Signomial
from .posyalg.gp import VAR_FLOOR
from .posyalg.lp import solve_lp
from .posyalg.mrc_terms import alpha_name, build_mrc_constraints, delta_posynomial, p_name
from .posyalg.sp import successive_condensation
from .receivers import COMBINERS, CombinerBank, SinrReport, sinr
from .scene import ChannelSet, Scenario
from .txmodel import coupling_for
from .vmaci import model_for

CONVERGED = "converged"
INFEASIBLE = "infeasible"
ITERATION_CAP = "iteration_cap"
SCALE_CAP = 1.5       # upper bound of the demand scale in the MRC start search
BACKTRACK_STEPS = (1.0, 0.5, 0.25, 0.125, 0.0625, 0.03125)


@dataclass
class OptimizerOptions:
    tol: float = 1e-4           # relative change of the objective between rounds
    max_outer: int = 100
    max_inner: int = 200        # Newton steps per GP centering
    max_sp: int = 100           # condensation rounds inside amp-opt
    gp_tol: float = 1e-9
    init_probes: int = 16
    probe_seed: int = 0
    boundary_moves: bool = True  # try pinning steadily shrinking variables at the floor
    joint_amp_step: bool = True  # amp-opt also moves p (at fixed combiners)
    scaling_phase_one: bool = True  # demand-scaling SP when no probe is MRC-feasible


@dataclass
class OptimizationResult:
    p: np.ndarray
    alpha: np.ndarray
    objective_trace: list
    achieved_sinr: np.ndarray
    status: str
    iterations: int
    receiver: str
    initial_objective: float = math.nan
    max_violation: float | None = None
    message: str = ""
    extra: dict = field(default_factory=dict)

    @property
    def objective(self) -> float:
        if self.status == INFEASIBLE or not self.objective_trace:
            return math.nan
        return float(self.objective_trace[-1])

    @property
    def objective_db(self) -> float:
        return 10.0 * math.log10(self.objective) if self.objective > 0 else math.nan

    @property
    def feasible(self) -> bool:
        return self.status != INFEASIBLE


def _infeasible(scenario, receiver, message, violation=None, iterations=0, trace=()):
    nt, K = scenario.n_targets, scenario.sensor_count
    return OptimizationResult(
        p=np.full(nt, np.nan), alpha=np.full(K, np.nan), objective_trace=list(trace),
        achieved_sinr=np.full(nt, np.nan), status=INFEASIBLE, iterations=iterations,
        receiver=receiver, max_violation=violation, message=message)


def evaluate_sinr(scenario: Scenario, channels: ChannelSet, p, alpha, kind: str,
                  coupling=None) -> SinrReport:
    """SINR report of receiver ``kind`` at the given resources."""
    model = model_for(scenario, channels, p, alpha, coupling=coupling)
    return sinr(model, COMBINERS[kind](model))


def relative_violation(scenario: Scenario, rho) -> float:
    psi = np.asarray(scenario.sinr_demands)
    return float(np.max((psi - np.asarray(rho)) / psi))


def _point(p, alpha) -> dict:
    d = {p_name(t): float(v) for t, v in enumerate(p)}
    d.update({alpha_name(k): float(v) for k, v in enumerate(alpha)})
    return d


def _unpack(point, nt, K):
    p = np.array([point[p_name(t)] for t in range(nt)])
    alpha = np.array([point[alpha_name(k)] for k in range(K)])
    return p, alpha


def _sum_objective(names) -> Posynomial:
    return Posynomial(Monomial.var(n) for n in names)


def _demand_scaling_sp(scenario, cons, p, alpha, scale0, opts):
    """Raise a common demand scale ``s`` from ``scale0`` toward 1 by successive condensation.

    Maximizes ``s`` subject to ``rho_j >= s psi_j`` (MRC), budget and box
    constraints. Returns the reached point and scale.
    """
    nt, K = scenario.n_targets, scenario.sensor_count
    names = [p_name(t) for t in range(nt)] + [alpha_name(k) for k in range(K)]
    s = Monomial.var("s")
    ratios = [((c.interference.plus + c.sensor_noise + c.fc_noise) * (c.psi * s),
               c.desired + c.interference.minus * (c.psi * s)) for c in cons]
    ub = {p_name(t): scenario.p_max for t in range(nt)}
    ub.update({alpha_name(k): scenario.alpha_max for k in range(K)})
    ub["s"] = SCALE_CAP
    start = _point(p, alpha)
    start["s"] = scale0
    sp = successive_condensation(
        Posynomial([s ** -1]), ratios, start, upper_bounds=ub,
        extra_constraints=[_sum_objective(names[:nt]) / scenario.p_max], tol=opts.tol,
        max_outer=opts.max_outer, gp_tol=opts.gp_tol, gp_max_iter=opts.max_inner,
        boundary_moves=opts.boundary_moves, stop=lambda x: x["s"] >= 1.0)
    p, alpha = _unpack(sp.point, nt, K)
    return p, alpha, sp.point["s"]


def _initial_point(scenario, channels, coupling, opts):
    """Feasible MRC starting point, or the smallest relative violation found.

    Tries the uniform power split at maximal amplification, then seeded
    probes of the box, then (if enabled) a demand-scaling signomial program
    started from the best of those. Returns ``(p, alpha, None)`` or
    ``(None, None, violation)``.
    """
    nt, K = scenario.n_targets, scenario.sensor_count
    candidates = [(np.full(nt, scenario.p_max / nt), np.full(K, scenario.alpha_max))]
    rng = np.random.default_rng(opts.probe_seed)
    for _ in range(opts.init_probes):
        candidates.append((scenario.p_max / nt * rng.uniform(1e-3, 1.0, nt),
                           scenario.alpha_max * rng.uniform(1e-3, 1.0, K)))
    best = (np.inf, None, None)
    for p, alpha in candidates:
        rho = evaluate_sinr(scenario, channels, p, alpha, "mrc", coupling).sinr
        viol = relative_violation(scenario, rho)
        if viol <= 0:
            return p, alpha, None
        if viol < best[0]:
            best = (viol, p, alpha)
    viol, p, alpha = best
    if not opts.scaling_phase_one:
        return None, None, viol
    cons = build_mrc_constraints(scenario, channels, coupling)
    try:
        p, alpha, scale = _demand_scaling_sp(scenario, cons, p, alpha, max(0.999 * (1.0 - viol), 1e-9), opts)
    except (InfeasibleError, ConvergenceError):
        return None, None, viol
    rho = evaluate_sinr(scenario, channels, p, alpha, "mrc", coupling).sinr
    v2 = relative_violation(scenario, rho)
    if v2 <= 0:
        return p, alpha, None
    return None, None, min(viol, v2)


def mrc_joint(scenario: Scenario, channels: ChannelSet,
              opts: OptimizerOptions | None = None) -> OptimizationResult:
    """Joint power and amplification design for an MRC fusion center.

    Each round condenses the denominator ``desired + psi * negative
    interference`` of every SINR constraint at the current point and solves
    the resulting geometric program, until the objective settles.
    """
    opts = opts or OptimizerOptions()
    coupling = coupling_for(scenario)
    nt, K = scenario.n_targets, scenario.sensor_count
    p0, a0, viol = _initial_point(scenario, channels, coupling, opts)
    if p0 is None:
        return _infeasible(scenario, "mrc",
                           "no feasible starting point for the MRC SINR demands", viol)
    cons = build_mrc_constraints(scenario, channels, coupling)
    names = [p_name(t) for t in range(nt)] + [alpha_name(k) for k in range(K)]
    ub = {p_name(t): scenario.p_max for t in range(nt)}
    ub.update({alpha_name(k): scenario.alpha_max for k in range(K)})
    budget = _sum_objective(names[:nt]) / scenario.p_max
    start = _point(p0, a0)
    sp = successive_condensation(
        _sum_objective(names), [(c.numerator, c.denominator) for c in cons], start,
        upper_bounds=ub, extra_constraints=[budget], tol=opts.tol,
        max_outer=opts.max_outer, gp_tol=opts.gp_tol, gp_max_iter=opts.max_inner,
        boundary_moves=opts.boundary_moves, lagged=True)
    p, alpha = _unpack(sp.point, nt, K)
    rho = evaluate_sinr(scenario, channels, p, alpha, "mrc", coupling).sinr
    return OptimizationResult(
        p=p, alpha=alpha, objective_trace=sp.trace, achieved_sinr=rho,
        status=CONVERGED if sp.converged else ITERATION_CAP, iterations=sp.iterations,
        receiver="mrc", initial_objective=float(p0.sum() + a0.sum()))


# -- separate (alternating) optimization -------------------------------------

def power_lp(scenario: Scenario, channels: ChannelSet, alpha, bank: CombinerBank,
             coupling=None) -> np.ndarray:
    """Minimum-sum-power allocation for fixed amplifications and combiners.

    Desired and interference powers are linear in ``p`` through the received
    powers, and the noise terms do not depend on ``p``, so every SINR demand
    is a linear inequality.
    """
    if coupling is None:
        coupling = coupling_for(scenario)
    nt = scenario.n_targets
    model = model_for(scenario, channels, np.zeros(nt), alpha, coupling=coupling)
    V = bank.v / np.linalg.norm(bank.v, axis=0)
    proj = np.abs(V.conj().T @ model.w) ** 2 * model.moments          # (nt, N)
    noise = np.real(np.einsum("kj,kl,lj->j", V.conj(), model.noise_cov, V))
    psi = np.asarray(scenario.sinr_demands)
    rows = np.empty((nt, nt))
    for j in range(nt):
        gain = proj[j, j] * coupling[j]
        leak = proj[j] @ coupling - gain
        rows[j] = (gain - psi[j] * leak) / noise[j]
    return solve_lp(np.ones(nt), A_ub=np.ones((1, nt)), b_ub=[scenario.p_max],
                    A_ge=rows, b_ge=psi, bounds=(0, scenario.p_max))


def _abs2_signomial(coeffs) -> Signomial:
    """``|sum_k sqrt(alpha_k) c_k|^2`` as a signomial in the amplifications."""
    terms = []
    K = len(coeffs)
    for k in range(K):
        c = abs(coeffs[k]) ** 2
        if c > 0:
            terms.append(Monomial(c, {alpha_name(k): 1}))
        for l in range(k + 1, K):
            c = 2.0 * np.real(coeffs[k] * np.conj(coeffs[l]))
            if c != 0:
                terms.append(Monomial(c, {alpha_name(k): 0.5, alpha_name(l): 0.5}))
    return Signomial.from_terms(terms)


def fixed_combiner_ratios(scenario: Scenario, channels: ChannelSet, bank: CombinerBank,
                          p=None, coupling=None) -> list:
    """SINR demands at fixed combiners as ``(num, den)`` posynomial pairs.

    With ``v_j^H w_i = sum_k sqrt(alpha_k) g_ik v_jk^H f_k`` every received power
    is a signomial in the amplifications with exponents 1 and 1/2. When ``p``
    is given the received powers ``delta`` are constants, otherwise they stay
    linear posynomials in the power variables.
    """
    if coupling is None:
        coupling = coupling_for(scenario)
    K, R = channels.f.shape
    Q = scenario.moments
    if p is None:
        delta = [delta_posynomial(row) for row in coupling]
    else:
        delta = list(coupling @ np.asarray(p, dtype=float))
    sigma2 = scenario.noise_variance
    V = bank.v / np.linalg.norm(bank.v, axis=0)
    ratios = []
    for j in range(scenario.n_targets):
        blocks = V[:, j].reshape(K, R)
        vf = np.einsum("kr,kr->k", blocks.conj(), channels.f)        # v_jk^H f_k
        desired = _abs2_signomial(channels.g[j] * vf) * (delta[j] * Q[j])
        interference = Signomial()
        for i in range(scenario.n_objects):
            if i == j or not delta[i]:
                continue
            interference = interference + _abs2_signomial(channels.g[i] * vf) * (delta[i] * Q[i])
        sensor = Posynomial(Monomial(sigma2 * abs(vf[k]) ** 2, {alpha_name(k): 1})
                            for k in range(K) if vf[k] != 0)
        fc = Posynomial([Monomial(sigma2)])         # ||v_j|| = 1
        psi = scenario.sinr_demands[j]
        num = (interference.plus + sensor + fc) * psi + desired.minus
        den = desired.plus + interference.minus * psi
        ratios.append((num, den))
    return ratios


def fixed_combiner_sp(scenario: Scenario, channels: ChannelSet, bank: CombinerBank, p, alpha,
                      opts: OptimizerOptions, coupling=None, joint: bool = True):
    """Minimum ``sum(p) + sum(alpha)`` for fixed combiners, by successive condensation.

    With ``joint=False`` only the amplifications move and ``p`` is held fixed.
    ``(p, alpha)`` must satisfy the demands with ``bank``. Returns ``(p, alpha)``.
    """
    nt, K = scenario.n_targets, scenario.sensor_count
    a_names = [alpha_name(k) for k in range(K)]
    ub = {n: scenario.alpha_max for n in a_names}
    start = {n: float(a) for n, a in zip(a_names, alpha)}
    extra = []
    if joint:
        p_names = [p_name(t) for t in range(nt)]
        ub.update({n: scenario.p_max for n in p_names})
        start.update({n: max(float(v), VAR_FLOOR) for n, v in zip(p_names, p)})
        extra = [_sum_objective(p_names) / scenario.p_max]
        names = p_names + a_names
        ratios = fixed_combiner_ratios(scenario, channels, bank, None, coupling)
    else:
        names = a_names
        ratios = fixed_combiner_ratios(scenario, channels, bank, p, coupling)
    sp = successive_condensation(
        _sum_objective(names), ratios, start, upper_bounds=ub, extra_constraints=extra,
        tol=opts.tol, max_outer=opts.max_sp, gp_tol=opts.gp_tol,
        gp_max_iter=opts.max_inner, boundary_moves=opts.boundary_moves)
    alpha = np.array([sp.point[n] for n in a_names])
    if joint:
        p = np.array([sp.point[p_name(t)] for t in range(nt)])
    return np.asarray(p, dtype=float), alpha


def _lagged_converged(trace, tol) -> bool:
    """Stopping test on ``E^(q-1) - E^(q-2)``, one round behind the latest value."""
    if len(trace) < 3:
        return False
    return abs(trace[-3] - trace[-2]) <= tol * trace[-2]


def _alternating(scenario, channels, kind, opts) -> OptimizationResult:
    opts = opts or OptimizerOptions()
    coupling = coupling_for(scenario)
    comb = COMBINERS[kind]
    nt, K = scenario.n_targets, scenario.sensor_count
    alpha = np.full(K, scenario.alpha_max)
    p = np.full(nt, scenario.p_max / nt)
    e_init = float(p.sum() + alpha.sum())

    def bank_at(p, alpha):
        return comb(model_for(scenario, channels, p, alpha, coupling=coupling))

    try:
        p = power_lp(scenario, channels, alpha, bank_at(p, alpha), coupling)
    except InfeasibleError as exc:
        rho = evaluate_sinr(scenario, channels, p, alpha, kind, coupling).sinr
        return _infeasible(scenario, kind, f"round 0 power-opt: {exc}",
                           relative_violation(scenario, rho))
    def power_step(p_mid, alpha_new):
        """Power LP after the combiner update; ``None`` when infeasible."""
        try:
            p_new = power_lp(scenario, channels, alpha_new, bank_at(p_mid, alpha_new),
                             coupling)
        except InfeasibleError:
            return None
        return p_new, float(p_new.sum() + alpha_new.sum())

    trace = [float(p.sum() + alpha.sum())]
    status = ITERATION_CAP
    for _ in range(1, opts.max_outer):
        bank = bank_at(p, alpha)
        try:
            p_mid, alpha_amp = fixed_combiner_sp(scenario, channels, bank, p, alpha, opts,
                                                 coupling, joint=opts.joint_amp_step)
        except InfeasibleError:
            status = CONVERGED
            break
        # the combiner update can undo the gain of the amplification step (mostly with
        # zf, whose combiner is not SINR-optimal); then retry on the geometric path
        # from the current point toward the proposal
        accepted = None
        for t in BACKTRACK_STEPS:
            alpha_new = alpha ** (1 - t) * alpha_amp ** t
            p_try = np.maximum(p, VAR_FLOOR) ** (1 - t) * np.maximum(p_mid, VAR_FLOOR) ** t
            step = power_step(p_try, alpha_new)
            if step is not None and step[1] <= trace[-1]:
                accepted = (step[0], alpha_new, step[1])
                break
        if accepted is None:
            status = CONVERGED
            break
        p, alpha, e_new = accepted
        trace.append(e_new)
        if _lagged_converged(trace, opts.tol):
            status = CONVERGED
            break
    rho = evaluate_sinr(scenario, channels, p, alpha, kind, coupling).sinr
    return OptimizationResult(
        p=p, alpha=alpha, objective_trace=trace, achieved_sinr=rho, status=status,
        iterations=len(trace), receiver=kind, initial_objective=e_init)


def mmse_alternating(scenario: Scenario, channels: ChannelSet,
                     opts: OptimizerOptions | None = None) -> OptimizationResult:
    """Alternate power LP, MMSE update and amplification SP."""
    return _alternating(scenario, channels, "mmse", opts)


def zf_alternating(scenario: Scenario, channels: ChannelSet,
                   opts: OptimizerOptions | None = None) -> OptimizationResult:
    """Alternating design with a zero-forcing fusion center.

    A round whose re-computed ZF combiner needs more total resource than the
    previous round is damped toward the current point, and the loop stops
    when no damped step helps, which keeps the trace monotone.
    """
    return _alternating(scenario, channels, "zf", opts)


def max_amp_baseline(scenario: Scenario, channels: ChannelSet, kind: str = "mrc",
                     opts: OptimizerOptions | None = None) -> OptimizationResult:
    """Optimize transmit power only, with every sensor at ``alpha_max``."""
    opts = opts or OptimizerOptions()
    coupling = coupling_for(scenario)
    nt, K = scenario.n_targets, scenario.sensor_count
    alpha = np.full(K, scenario.alpha_max)
    p = np.full(nt, scenario.p_max / nt)
    e_init = float(p.sum() + alpha.sum())
    if kind == "mrc":
        rho = evaluate_sinr(scenario, channels, p, alpha, "mrc", coupling).sinr
        if relative_violation(scenario, rho) > 0:
            return _infeasible(scenario, kind, "uniform power split misses the demands",
                               relative_violation(scenario, rho))
        fixed = {alpha_name(k): scenario.alpha_max for k in range(K)}
        cons = build_mrc_constraints(scenario, channels, coupling)
        ratios = [(c.numerator.substitute(fixed), c.denominator.substitute(fixed))
                  for c in cons]
        names = [p_name(t) for t in range(nt)]
        objective = _sum_objective(names) + Monomial(K * scenario.alpha_max)
        sp = successive_condensation(
            objective, ratios, {n: float(v) for n, v in zip(names, p)},
            upper_bounds={n: scenario.p_max for n in names},
            extra_constraints=[_sum_objective(names) / scenario.p_max], tol=opts.tol,
            max_outer=opts.max_outer, gp_tol=opts.gp_tol, gp_max_iter=opts.max_inner,
        boundary_moves=opts.boundary_moves)
        p = np.array([sp.point[n] for n in names])
        trace, converged = sp.trace, sp.converged
    else:
        comb = COMBINERS[kind]
        trace, converged = [], False
        for _ in range(opts.max_outer):
            bank = comb(model_for(scenario, channels, p, alpha, coupling=coupling))
            try:
                p = power_lp(scenario, channels, alpha, bank, coupling)
            except InfeasibleError as exc:
                if not trace:
                    rho = evaluate_sinr(scenario, channels, p, alpha, kind, coupling).sinr
                    return _infeasible(scenario, kind, str(exc),
                                       relative_violation(scenario, rho))
                raise
            e = float(p.sum() + alpha.sum())
            trace.append(e)
            if len(trace) > 1 and abs(trace[-2] - e) <= opts.tol * e:
                converged = True
                break
            if kind == "zf":        # combiner does not depend on p
                converged = True
                break
    rho = evaluate_sinr(scenario, channels, p, alpha, kind, coupling).sinr
    return OptimizationResult(
        p=p, alpha=alpha, objective_trace=trace, achieved_sinr=rho,
        status=CONVERGED if converged else ITERATION_CAP, iterations=len(trace),
        receiver=kind, initial_objective=e_init)


# -- interference-free regime --------------------------------------------------

def snr_terms(channels: ChannelSet, alpha, j: int):
    """``(sum_k alpha_k b_jk, sum_k alpha_k^2 b_jk ||f_k||^2)`` with ``b_jk = |g_jk|^2 ||f_k||^2``."""
    alpha = np.asarray(alpha, dtype=float)
    fsq = channels.f_sq_norms
    b = np.abs(channels.g[j]) ** 2 * fsq
    return float(alpha @ b), float((alpha ** 2 * fsq) @ b)


def mrc_snr(channels: ChannelSet, alpha, virtual_power: float, sigma2: float, j: int) -> float:
    """Interference-free MRC SNR of target ``j`` for virtual power ``delta_j Q_j``."""
    s1, s2 = snr_terms(channels, alpha, j)
    return virtual_power * s1 ** 2 / (sigma2 * (s2 + s1))


def log_snr_gradient(channels: ChannelSet, alpha, j: int) -> np.ndarray:
    """Analytic ``d ln(SNR_j) / d alpha_k`` for every sensor ``k``.

    Uses the single-fraction form
    ``[2 b_k (S2 + S1) - (2 alpha_k b_k ||f_k||^2 + b_k) S1] / [S1 (S2 + S1)]``.
    """
    alpha = np.asarray(alpha, dtype=float)
    fsq = channels.f_sq_norms
    b = np.abs(channels.g[j]) ** 2 * fsq
    s1, s2 = snr_terms(channels, alpha, j)
    num = 2.0 * b * (s2 + s1) - (2.0 * alpha * b * fsq + b) * s1
    return num / (s1 * (s2 + s1))


def zeta(channels: ChannelSet, alpha, j: int, k: int) -> float:
    """``b_jk S2 - alpha_k b_jk ||f_k||^2 S1``; the gradient numerator is ``2 zeta + b_jk S1``."""
    alpha = np.asarray(alpha, dtype=float)
    fsq = channels.f_sq_norms
    b = np.abs(channels.g[j]) ** 2 * fsq
    s1, s2 = snr_terms(channels, alpha, j)
    return float(b[k] * s2 - alpha[k] * b[k] * fsq[k] * s1)


def zeta_stationary_point(channels: ChannelSet, alpha, k: int) -> np.ndarray:
    """Amplifications with ``alpha_l = alpha_k ||f_k||^2 / (2 ||f_l||^2)`` for ``l != k``.

    This is where the partial derivatives of :func:`zeta` in every
    ``alpha_l, l != k`` vanish.
    """
    alpha = np.array(alpha, dtype=float)
    fsq = channels.f_sq_norms
    out = alpha[k] * fsq[k] / (2.0 * fsq)
    out[k] = alpha[k]
    return out


def asymptotic_power_opt(scenario: Scenario, channels: ChannelSet,
                         opts: OptimizerOptions | None = None) -> OptimizationResult:
    """Power LP with ``alpha = alpha_max`` and interference neglected.

    ``achieved_sinr`` holds the interference-free SNR of each target.
    """
    coupling = coupling_for(scenario)
    nt, K = scenario.n_targets, scenario.sensor_count
    alpha = np.full(K, scenario.alpha_max)
    sigma2 = scenario.noise_variance
    Q = scenario.moments
    psi = np.asarray(scenario.sinr_demands)
    rows = np.empty((nt, nt))
    for j in range(nt):
        s1, s2 = snr_terms(channels, alpha, j)
        rows[j] = Q[j] * s1 ** 2 * coupling[j] / (sigma2 * (s2 + s1))
    try:
        p = solve_lp(np.ones(nt), A_ub=np.ones((1, nt)), b_ub=[scenario.p_max],
                     A_ge=rows, b_ge=psi, bounds=(0, scenario.p_max))
    except InfeasibleError as exc:
        return _infeasible(scenario, "mrc", f"asymptotic power LP: {exc}")
    snr = rows @ p
    return OptimizationResult(
        p=p, alpha=alpha, objective_trace=[float(p.sum() + alpha.sum())],
        achieved_sinr=snr, status=CONVERGED, iterations=1, receiver="mrc",
        initial_objective=float(scenario.p_max + alpha.sum()))


ALGORITHMS = {
    "mrc-joint": mrc_joint,
    "mmse-alt": mmse_alternating,
    "zf-alt": zf_alternating,
    "max-amp": max_amp_baseline,
    "asymptotic": asymptotic_power_opt,
}


def run_algorithm(name: str, scenario: Scenario, channels: ChannelSet,
                  opts: OptimizerOptions | None = None, receiver: str = "mrc"):
    if name == "max-amp":
        return max_amp_baseline(scenario, channels, receiver, opts)
    return ALGORITHMS[name](scenario, channels, opts)
