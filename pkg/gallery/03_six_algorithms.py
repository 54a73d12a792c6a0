"""
Six algorithms on one problem
=============================

Standard AFSA, the four movement-weight schedules and a global-best PSO
on Griewank 10-D, written out as a CSV table and an SVG convergence plot.
"""

from pathlib import Path

from fishswarm import ALGORITHMS, compare, render_convergence_svg, write_summary_csv
from fishswarm.output import mean_trace

out = Path("gallery_output")
rows, records = compare(["griewank"], [10], iterations=500, runs=5, seed=0,
                        keep_records=True)

for r in rows:
    s = r.summary
    print(f"{r.algorithm:<9} best {s.best:9.3e}  mean {s.mean:9.3e}  "
          f"solved {s.solved_fraction:4.0%}")

write_summary_csv(rows, out / "griewank_10_summary.csv")
series = {a: mean_trace(records[("griewank", 10, a)]) for a in ALGORITHMS}
svg = render_convergence_svg(series, out / "griewank_10.svg", title="Griewank 10-D")
print("wrote", svg)
