"""
fishswarm: artificial fish swarm optimisation with movement-weight
schedules, a global-best PSO baseline and a seeded experiment harness.
"""

from .afsa import SwarmParams, SwarmState, init_swarm, run, step_iteration
from .benchmarks import FUNCTION_NAMES, Objective, lookup
from .core import Bounds, EvalCounter, RngStream
from .harness import (ALGORITHMS, ConfigError, ExperimentConfig, compare, mw_sweep,
                      run_experiment)
from .output import render_convergence_svg, write_summary_csv, write_trace_csv
from .pso import pso_run
from .results import RunRecord, Summary, summarize
from .schedules import MwSchedule, mw_at, parse_schedule

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS", "Bounds", "ConfigError", "EvalCounter", "ExperimentConfig",
    "FUNCTION_NAMES", "MwSchedule", "Objective", "RngStream", "RunRecord", "Summary",
    "SwarmParams", "SwarmState", "compare", "init_swarm", "lookup", "mw_at", "mw_sweep",
    "parse_schedule", "pso_run", "render_convergence_svg", "run", "run_experiment",
    "step_iteration", "summarize", "write_summary_csv", "write_trace_csv",
]
