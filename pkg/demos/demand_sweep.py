"""Sum resource versus SINR demand for every design.

The maximum-amplification baseline pays for the amplified sensor noise at
low demands. MRC stops being feasible once the clutter interference cannot
be outweighed, while the MMSE and ZF designs keep going.
"""
import numpy as np

from probeopt import reference_scenario, run_algorithm, synthesize_channels

designs = [("max-amp", "mrc"), ("mrc-joint", "mrc"), ("zf-alt", "zf"), ("mmse-alt", "mmse")]
demands = [0.05, 0.25, 1.0, 2.0, 4.0, 8.0]

for clutter_range in (0.5, 2.0):
    base = reference_scenario(clutter_range)
    channels = synthesize_channels(base, 0)
    print(f"\nclutter at {clutter_range} m, objective in dB ('--' = infeasible)")
    print("psi     " + "".join(f"{name:>11s}" for name, _ in designs))
    for psi in demands:
        sc = base.with_demands(psi)
        cells = []
        for name, receiver in designs:
            res = run_algorithm(name, sc, channels, receiver=receiver)
            cells.append(f"{res.objective_db:11.2f}" if res.feasible else f"{'--':>11s}")
        print(f"{psi:<8g}" + "".join(cells))
