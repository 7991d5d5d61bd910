"""Objective per condensation round for the MRC joint design.

Two targets and a near clutter, five channel draws. Each row of the output
is one round; the objective is total transmit power plus total
amplification, in dB.
"""
import numpy as np

from probeopt import mrc_joint, reference_scenario, synthesize_channels

scenario = reference_scenario(clutter_range=0.5, psi=1.0)

for seed in range(5):
    channels = synthesize_channels(scenario, seed)
    res = mrc_joint(scenario, channels)
    if not res.feasible:
        print(f"seed {seed}: no feasible start ({res.message})")
        continue
    trace_db = 10 * np.log10(res.objective_trace)
    print(f"seed {seed}: {res.iterations} rounds, "
          f"{trace_db[0]:.2f} dB -> {trace_db[-1]:.2f} dB")
    print("   ", " ".join(f"{v:.3f}" for v in trace_db))
    print(f"    p = {np.round(res.p, 4)}, alpha = {np.round(res.alpha, 4)}")
