"""Batch experiments from the command line.

``probe-opt run --scenario ref.json --experiment sweep --algorithm mrc-joint,mmse-alt
--psi-start 0.1 --psi-end 2 --psi-step 0.1 --seeds 0,1,2 --out sweep.csv``

Every experiment writes one CSV file (header always present, LF line
endings, 12 significant digits, rows sorted). Infeasible runs are rows with
``status=infeasible`` and empty numeric fields; they do not change the exit
status. Usage errors exit with 2, unreadable inputs or unwritable outputs
with 1.
"""
from __future__ import annotations

import argparse
import csv
import math
import sys
from pathlib import Path

import numpy as np

from . import optimizers as opt
from .characterize import CharacterizationOptions, recursive_characterization
from .errors import ConfigurationError, InfeasibleError, ProbeOptError, SingularityError
from .receivers import COMBINERS, sinr
from .scene import Scenario, load_scenario, synthesize_channels
from .vmaci import coherence, equivalent_channels, model_for

EXPERIMENTS = ("converge", "sweep", "compare", "coherence", "characterize")
DEFAULT_K_VALUES = (5, 10, 20, 50, 100)


class UsageError(Exception):
    pass


def fmt(value) -> str:
    """CSV cell: 12 significant digits for reals, empty for missing values."""
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        if not math.isfinite(value):
            return ""
        return "{:.12g}".format(float(value))
    return str(value)


def write_csv(path, header, rows) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([fmt(v) for v in row])


def _db(x):
    return 10.0 * math.log10(x) if x is not None and x > 0 and math.isfinite(x) else None


def parse_seeds(text: str) -> list:
    parts = [s.strip() for s in text.split(",") if s.strip()]
    if not parts:
        raise UsageError("--seeds needs at least one integer")
    try:
        return [int(s) for s in parts]
    except ValueError as exc:
        raise UsageError(f"--seeds must be comma-separated integers: {exc}") from exc


def parse_algorithms(text: str) -> list:
    names = [s.strip() for s in text.split(",") if s.strip()]
    if names == ["all"]:
        return list(opt.ALGORITHMS)
    bad = [n for n in names if n not in opt.ALGORITHMS]
    if not names or bad:
        raise UsageError(f"unknown algorithm(s) {bad or names}; choose from "
                         f"{', '.join(opt.ALGORITHMS)}")
    return names


def psi_grid(start, end, step) -> list:
    if None in (start, end, step):
        raise UsageError("sweep needs --psi-start, --psi-end and --psi-step")
    if step <= 0 or start <= 0 or end < start:
        raise UsageError("sweep needs 0 < psi-start <= psi-end and psi-step > 0")
    n = int(math.floor((end - start) / step + 1e-9)) + 1
    return [float("{:.12g}".format(start + i * step)) for i in range(n)]


def _resource_cells(scenario: Scenario, res) -> list:
    return list(res.p) + list(res.alpha)


def _resource_header(scenario: Scenario) -> list:
    return ([f"p{t + 1}" for t in range(scenario.n_targets)]
            + [f"alpha{k + 1}" for k in range(scenario.sensor_count)])


def _run(name, scenario, channels, receiver):
    return opt.run_algorithm(name, scenario, channels, None, receiver)


# -- experiments ---------------------------------------------------------------

def exp_converge(scenario, args):
    header = ["algorithm", "seed", "q", "status", "objective", "objective_db"]
    rows = []
    for name in args.algorithms:
        for seed in args.seeds:
            channels = synthesize_channels(scenario, seed)
            res = _run(name, scenario, channels, args.receiver)
            if not res.feasible:
                rows.append([name, seed, 0, res.status, None, None])
                continue
            for q, e in enumerate(res.objective_trace, start=1):
                rows.append([name, seed, q, res.status, e, _db(e)])
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return header, rows


def exp_sweep(scenario, args):
    grid = psi_grid(args.psi_start, args.psi_end, args.psi_step)
    header = (["algorithm", "seed", "psi", "status", "objective", "objective_db",
               "iterations", "min_sinr_ratio"] + _resource_header(scenario))
    rows = []
    blank = [None] * (scenario.n_targets + scenario.sensor_count)
    for seed in args.seeds:
        channels = synthesize_channels(scenario, seed)
        for psi in grid:
            sc = scenario.with_demands(psi)
            for name in args.algorithms:
                res = _run(name, sc, channels, args.receiver)
                if not res.feasible:
                    rows.append([name, seed, psi, res.status, None, None, 0, None] + blank)
                    continue
                ratio = float(np.min(res.achieved_sinr / np.asarray(sc.sinr_demands)))
                rows.append([name, seed, psi, res.status, res.objective, res.objective_db,
                             res.iterations, ratio] + _resource_cells(sc, res))
    rows.sort(key=lambda r: (r[0], r[1], r[2]))
    return header, rows


def exp_compare(scenario, args):
    header = (["algorithm", "seed", "receiver", "target", "status", "sinr", "sinr_db"])
    rows = []
    for name in args.algorithms:
        for seed in args.seeds:
            channels = synthesize_channels(scenario, seed)
            res = _run(name, scenario, channels, args.receiver)
            if not res.feasible:
                for kind in COMBINERS:
                    for j in range(scenario.n_targets):
                        rows.append([name, seed, kind, j + 1, res.status, None, None])
                continue
            model = model_for(scenario, channels, res.p, res.alpha)
            for kind, comb in COMBINERS.items():
                try:
                    rho = sinr(model, comb(model)).sinr
                    status = "ok"
                except SingularityError:
                    rho, status = [None] * scenario.n_targets, "rank_deficient"
                for j in range(scenario.n_targets):
                    rows.append([name, seed, kind, j + 1, status, rho[j], _db(rho[j])])
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    return header, rows


def exp_coherence(scenario, args):
    header = ["K", "mean_mu", "std_mu", "seeds"]
    rows = []
    for K in args.k_values:
        sc = scenario.replace(sensor_count=K)
        alpha = np.full(K, sc.alpha_max)
        mus = [coherence(equivalent_channels(synthesize_channels(sc, s), alpha))
               for s in args.seeds]
        rows.append([K, float(np.mean(mus)), float(np.std(mus)), len(mus)])
    rows.sort(key=lambda r: r[0])
    return header, rows


def exp_characterize(scenario, args):
    header = ["algorithm", "seed", "round", "target", "status", "q_true", "q_estimate",
              "snapshots", "converged"]
    rows = []
    truth = scenario.moments
    for name in args.algorithms:
        for seed in args.seeds:
            channels = synthesize_channels(scenario, seed)
            copts = CharacterizationOptions(algorithm=name, receiver=args.receiver,
                                            snapshots=args.snapshots, seed=seed)
            try:
                trace = recursive_characterization(scenario, channels, copts)
            except InfeasibleError:
                for j in range(scenario.n_targets):
                    rows.append([name, seed, 0, j + 1, opt.INFEASIBLE, truth[j], None,
                                 args.snapshots, False])
                continue
            for r, rnd in enumerate(trace.rounds, start=1):
                for j, q in enumerate(rnd.q_estimates):
                    rows.append([name, seed, r, j + 1, "ok", truth[j], q,
                                 rnd.snapshots_used, trace.converged])
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    return header, rows


RUNNERS = {
    "converge": exp_converge,
    "sweep": exp_sweep,
    "compare": exp_compare,
    "coherence": exp_coherence,
    "characterize": exp_characterize,
}


# -- entry point ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="probe-opt",
                                 description="Sum-power probing and sensing experiments.")
    sub = ap.add_subparsers(dest="command", required=True)
    run = sub.add_parser("run", help="run one experiment and write a CSV file")
    run.add_argument("--scenario", required=True, help="scenario JSON file")
    run.add_argument("--experiment", required=True, choices=EXPERIMENTS)
    run.add_argument("--algorithm", default="mrc-joint",
                     help="algorithm name, comma list, or 'all' "
                          f"({', '.join(opt.ALGORITHMS)})")
    run.add_argument("--receiver", default="mrc", choices=sorted(COMBINERS),
                     help="fusion-center receiver for max-amp (default mrc)")
    run.add_argument("--psi-start", type=float)
    run.add_argument("--psi-end", type=float)
    run.add_argument("--psi-step", type=float)
    run.add_argument("--seeds", required=True, help="comma-separated channel seeds")
    run.add_argument("--k-values", default=",".join(map(str, DEFAULT_K_VALUES)),
                     help="sensor counts for the coherence experiment")
    run.add_argument("--snapshots", type=int, default=10_000,
                     help="snapshots per round for the characterize experiment")
    run.add_argument("--out", required=True, help="output CSV path")
    return ap


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args.seeds = parse_seeds(args.seeds)
        args.algorithms = parse_algorithms(args.algorithm)
        args.k_values = [int(k) for k in args.k_values.split(",") if k.strip()]
        if args.experiment == "sweep":
            psi_grid(args.psi_start, args.psi_end, args.psi_step)
        if args.snapshots < 2:
            raise UsageError("--snapshots must be >= 2")
        if not args.k_values or min(args.k_values) < 1:
            raise UsageError("--k-values must be positive integers")
    except (UsageError, ValueError) as exc:
        parser.error(str(exc))
    try:
        scenario = load_scenario(args.scenario)
    except (OSError, ConfigurationError) as exc:
        print(f"probe-opt: cannot load scenario: {exc}", file=sys.stderr)
        return 1
    try:
        header, rows = RUNNERS[args.experiment](scenario, args)
    except ProbeOptError as exc:
        print(f"probe-opt: {exc}", file=sys.stderr)
        return 1
    try:
        write_csv(Path(args.out), header, rows)
    except OSError as exc:
        print(f"probe-opt: cannot write {args.out}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
