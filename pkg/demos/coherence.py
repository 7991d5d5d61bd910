"""Coherence of the equivalent channel matrix as sensors are added.

With more sensors the stacked channel columns of distinct objects become
nearly orthogonal, which is the regime where MRC loses little to MMSE.
"""
import numpy as np

from probeopt import coherence, reference_scenario, synthesize_channels
from probeopt.vmaci import equivalent_channels

base = reference_scenario().replace(fusion_antennas=2)
print(" K   mean mu   std mu")
for K in (2, 5, 10, 20, 50, 100, 200):
    sc = base.replace(sensor_count=K)
    mus = [coherence(equivalent_channels(synthesize_channels(sc, s), np.ones(K)))
           for s in range(50)]
    print(f"{K:3d}   {np.mean(mus):.4f}   {np.std(mus):.4f}")
