"""Throughput regimes for complementation routing versus the swap baseline.

Time parameters are dimensionless; pick your own hardware numbers.  The
closed forms are cross-checked against block-by-block schedule walkers,
and the saturated regime is simulated over many windows to show how far
the optimistic middle case drifts from the sustainable rate.
"""

from mecnet.metrics import TimingParams, throughput_cqr, throughput_mec
from mecnet.timeline import simulate_mec_long_run, walk_cqr_window, walk_mec_window

r_bar = 4.0  # requests served per cycle, as measured from the scheduler

print(" lam  prep route |  F_mec  F_cqr  (cycles per window, walked)")
for lam in (2, 4, 6, 10, 20, 40):
    t = TimingParams(lam, 3, 1, 4, 1)
    fm = throughput_mec(t, r_bar)
    fb = throughput_cqr(t)
    print(
        f"{lam:4} {3:5} {1:5} | {fm:6.3f} {fb:6.3f}  "
        f"(mec {walk_mec_window(t)}, cqr {walk_cqr_window(t)})"
    )

print()
print("saturated regime (routing fits, full re-preparation does not):")
t = TimingParams(5, 4, 2, 1, 1)
res = simulate_mec_long_run(t, windows=4096)
print(
    f"  lam=5, prep=4, route=2: long-run {res.per_window:.3f} completions/window "
    f"vs the middle-case value 1.0 (sustainable rate is lam/(prep+route) = {5/6:.3f})"
)
