"""Noisy test frames drawn the same way the simulator draws them."""

from polarflip.sim import SimConfig
from polarflip.sim.engine import FrameTask


def frame_source(snr_db, n=10, K=512, r=16, seed=0x5EED):
    task = FrameTask(SimConfig(n=n, K=K, r=r, snrs=(snr_db,), decoder="sc", seed=seed), snr_db)
    task.frame(0)
    return task
