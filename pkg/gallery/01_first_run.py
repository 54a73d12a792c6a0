"""
A first fish swarm run
======================

Minimise the 30-D Sphere with a constant movement weight of 0.96 and look
at how the best value, visual and step evolve.
"""

import numpy as np

from fishswarm import MwSchedule, RngStream, SwarmParams, lookup, run

obj = lookup("sphere", 30)                  # bounds [-500, 500], solved below 0.01
params = SwarmParams.for_objective(obj, itr_max=1000)
print(params)                               # visual0 = 400, step0 = 250

rec = run(obj, params, MwSchedule.constant(0.96, 1000), RngStream(master_seed=0))

# visual and step shrink geometrically: 400 * 0.96**t
for t in (0, 100, 250, 500, 750, 1000):
    print(f"iter {t:4d}  best {rec.best_fitness[t]:10.3e}  "
          f"visual {rec.visual[t]:9.3e}  step {rec.step[t]:9.3e}")

print("evaluations:", rec.evaluations)
print("distance of best point from the optimum:", np.linalg.norm(rec.best_position))

# %%
# Without the movement weight (mw = 1) the same swarm stalls far away.
flat = run(obj, params, MwSchedule.constant(1.0, 1000), RngStream(master_seed=0))
print(f"mw 0.96 -> {rec.final_best:.3e}   mw 1.00 -> {flat.final_best:.3e}")
