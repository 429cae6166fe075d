"""
Frame error rates and oracle bounds
===================================

A short campaign over three SNR points. The order histogram D(w) comes
from the genie decoder on the same frames, so the SC rate and the ideal
one-flip and two-flip rates can be read off next to the real decoder.
Longer runs go through ``polarflip simulate``.
"""

from polarflip.sim import SimConfig, run_fer

cfg = SimConfig(decoder="scflip1", snrs=(1.5, 2.0, 2.5), min_errors=50, max_frames=20_000)
report = run_fer(cfg)

print(" SNR   frames   SC       OA1      SCFlip-1  OA2      N_c")
for p in report:
    s = p.stats
    print(f"{p.snr_db:4.1f} {s.frames:8d}  {s.fer_sc:.2e} {p.fer_oa(1):.2e} {s.fer:.2e}  "
          f"{p.fer_oa(2):.2e} {s.nc_ave:.3f}")

lo, hi = report[-1].fer_ci
print(f"95% interval for SCFlip-1 at 2.5 dB: [{lo:.2e}, {hi:.2e}]")
