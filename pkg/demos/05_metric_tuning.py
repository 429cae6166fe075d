"""
Tuning the flip metric
======================

Order-1 frames are stored once and then re-ranked for every metric
setting, which makes alpha sweeps and loss tables cheap.
"""

import numpy as np

from polarflip.sim import SimConfig, collect_order_pool, loss_of_order1, sweep_alpha

cfg = SimConfig(snrs=(2.0,), max_frames=10**6)
pool = collect_order_pool(cfg, 2.0, min_order1=1500)
print(f"{pool.frames} frames, {len(pool.order1)} of order 1, {len(pool.order2)} of order 2")

# how often is the very first candidate the wrong decision?
alphas = np.round(np.arange(0.1, 1.01, 0.1), 2)
sweep = sweep_alpha(cfg, alphas, order=1, list_size=1, pool=pool)
for a, h in zip(sweep.alphas, sweep.hit_rate):
    print(f"alpha {a:.1f}: first candidate is the error in {100 * h:5.1f}% of frames")
best = sweep.best_alpha
print("best alpha:", best)

# loss of order 1 against the list size, plain |L| versus the tuned metric
grid = [1, 2, 5, 10, 20, 40]
for metric, alpha in (("llr", 1.0), ("malpha", best)):
    table = loss_of_order1(pool, grid, metric, alpha)
    cells = "  ".join(f"T={t}: {v:.1e}" for t, v in zip(grid, table.unconditional))
    print(f"{metric:7s} {cells}")
