"""
Choosing a constant movement weight
===================================

Too small a weight freezes the swarm before it reaches the optimum; too
large a weight never lets it settle. A coarse grid sweep shows the band
that works for Sphere.
"""

from fishswarm import ExperimentConfig, mw_sweep

base = ExperimentConfig("sphere", 30, "cwafa", iterations=1000, runs=5, master_seed=0)
grid = [round(0.90 + 0.01 * k, 2) for k in range(11)]
sweep = mw_sweep(base, grid)

for mw, s in sweep.rows:
    print(f"mw {mw:.2f}  mean {s.mean:10.3e}  solved {s.solved_fraction:4.0%}")
print("best weight:", sweep.best_mw)

# the shrink factor after 1000 iterations explains the edges of the band
for mw in (0.90, 0.95, 0.99):
    print(f"{mw}: visual ends at {400 * mw**1000:.2e}")
