"""
Finding the wrong decision and flipping it
==========================================

The genie-aided decoder tells where SC first goes wrong. Those frames are
exactly the ones SCFlip can rescue, provided the metric ranks the error
position early.
"""

import numpy as np

from polarflip import (CrcSpec, FlipConfig, MetricContext, flip_determine, oracle_sc, sc_decode,
                       scflip1)
from polarflip.sim import SimConfig
from polarflip.sim.engine import FrameTask

task = FrameTask(SimConfig(snrs=(2.5,)), 2.5)
task.frame(0)
spec, crc = task.spec, CrcSpec()

# look for a few frames where plain SC makes exactly one channel-generated error
found = []
i = 0
while len(found) < 5:
    fr = task.frame(i)
    order, cge = oracle_sc(fr.llrs, spec, fr.u, ties=fr.ties)
    if order == 1:
        found.append((fr, cge[0]))
    i += 1
print(f"scanned {i} frames for 5 of order 1")

for fr, k in found:
    first = sc_decode(fr.llrs, spec, ties=fr.ties)
    plain = flip_determine(MetricContext(first.decision_llrs, spec.info_set, metric="llr"), 1000)
    tuned = flip_determine(MetricContext(first.decision_llrs, spec.info_set, alpha=0.3), 1000)
    res = scflip1(fr.llrs, spec, crc, FlipConfig(t1=20), ties=fr.ties)
    print(f"error at u_{k:4d}: rank by |L| {plain.positions.index(k):3d}, "
          f"rank by M_0.3 {tuned.positions.index(k):2d}, "
          f"SCFlip-1 attempts {res.attempts_used:2d}, correct {np.array_equal(res.u_hat, fr.u)}")
