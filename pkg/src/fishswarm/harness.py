"""
Experiment orchestration: repeated seeded runs, movement-weight sweeps and
the six-algorithm comparison.

Run ``r`` of an experiment always uses ``RngStream(master_seed, r)``, so an
experiment with ``runs=R`` gives the same finals as ``R`` single-run
experiments at the matching run indices, whatever order they execute in.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import afsa, pso
from .benchmarks import FUNCTION_NAMES, canonical_name, lookup
from .core import RngStream
from .results import RunRecord, Summary, summarize
from .schedules import MwSchedule

__all__ = [
    "ALGORITHMS",
    "ConfigError",
    "CompareRow",
    "ExperimentConfig",
    "SweepResult",
    "compare",
    "default_grid",
    "mw_sweep",
    "run_experiment",
]

ALGORITHMS = ("std_afsa", "cwafa", "rwafa", "ldwafsa", "liwafsa", "gpso")

# Per function: (best constant MW, acceptable range low, high) at 1000 iterations.
DEFAULT_MW = {
    "sphere": (0.96, 0.95, 0.99),
    "rosenbrock": (0.96, 0.93, 0.99),
    "ackley": (0.96, 0.95, 0.99),
    "griewank": (0.98, 0.94, 0.99),
}

_RANGED = {"rwafa": "random", "ldwafsa": "lindec", "liwafsa": "lininc"}


class ConfigError(ValueError):
    """Invalid experiment configuration."""


@dataclass(frozen=True)
class ExperimentConfig:
    """
    One (function, dimension, algorithm) experiment.

    Movement weights left as ``None`` default to the per-function values
    in ``DEFAULT_MW``; ``std_afsa`` always uses a constant weight of 1.
    ``population`` is ignored by ``gpso``, which uses ``5 * dimension``.
    """

    function: str
    dimension: int
    algorithm: str = "cwafa"
    mw: float | None = None
    mw_min: float | None = None
    mw_max: float | None = None
    iterations: int = 1000
    population: int = 30
    runs: int = 50
    master_seed: int = 0
    try_number: int = 10
    delta: float = 0.5
    visual_fraction: float = 0.40
    step_fraction: float = 0.25
    output_dir: str | None = None

    def validate(self):
        """Raise :class:`ConfigError` on the first inconsistency found."""
        try:
            name = canonical_name(self.function)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if self.algorithm not in ALGORITHMS:
            raise ConfigError(
                f"unknown algorithm {self.algorithm!r}; valid: {', '.join(ALGORITHMS)}")
        if self.dimension < 1 or (name == "rosenbrock" and self.dimension < 2):
            raise ConfigError(f"invalid dimension {self.dimension} for {name}")
        if self.runs < 1:
            raise ConfigError("runs must be >= 1")
        if self.iterations < 1:
            raise ConfigError("iterations must be >= 1")
        if self.population < 1:
            raise ConfigError("population must be >= 1")
        if not 0 <= self.master_seed < 2**64:
            raise ConfigError("seed must be a 64-bit unsigned integer")
        if self.algorithm == "std_afsa" and self.mw not in (None, 1.0):
            raise ConfigError("std_afsa always uses mw = 1.0")
        if self.algorithm in ("std_afsa", "gpso"):
            return
        try:
            self.schedule()
            afsa.SwarmParams(population=self.population, visual0=1.0, step0=1.0,
                             try_number=self.try_number, delta=self.delta,
                             itr_max=self.iterations)
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
        if not (self.visual_fraction > 0 and self.step_fraction > 0):
            raise ConfigError("visual and step fractions must be positive")

    def schedule(self) -> MwSchedule | None:
        """Movement-weight schedule for this algorithm, ``None`` for gpso."""
        if self.algorithm == "gpso":
            return None
        if self.algorithm == "std_afsa":
            return MwSchedule.constant(1.0, self.iterations)
        best, low, high = DEFAULT_MW[canonical_name(self.function)]
        if self.algorithm == "cwafa":
            mw = best if self.mw is None else self.mw
            return MwSchedule.constant(mw, self.iterations)
        mw_min = low if self.mw_min is None else self.mw_min
        mw_max = high if self.mw_max is None else self.mw_max
        if mw_min > mw_max:
            raise ConfigError(f"mw_min {mw_min} > mw_max {mw_max}")
        return MwSchedule(_RANGED[self.algorithm], float(mw_min), float(mw_max),
                          self.iterations)

    def objective(self):
        return lookup(self.function, self.dimension)

    def swarm_params(self) -> afsa.SwarmParams:
        return afsa.SwarmParams.for_objective(
            self.objective(), itr_max=self.iterations, population=self.population,
            try_number=self.try_number, delta=self.delta,
            visual_fraction=self.visual_fraction, step_fraction=self.step_fraction)


def _single_run(cfg: ExperimentConfig, run_index: int) -> RunRecord:
    obj = cfg.objective()
    rng = RngStream(cfg.master_seed, run_index)
    if cfg.algorithm == "gpso":
        return pso.pso_run(obj, cfg.iterations, rng, run_index=run_index)
    return afsa.run(obj, cfg.swarm_params(), cfg.schedule(), rng, run_index=run_index)


def run_experiment(cfg: ExperimentConfig, run_indices=None, workers: int = 1):
    """
    Execute ``cfg.runs`` independent runs.

    Parameters
    ----------
    cfg : ExperimentConfig
        Validated before any run starts.
    run_indices : sequence of int, optional
        Run indices to execute, ``range(cfg.runs)`` by default.
    workers : int, default 1
        Thread count. Results do not depend on it.

    Returns
    -------
    records : list of RunRecord
        Sorted by run index.
    summary : Summary
    """
    cfg.validate()
    indices = list(range(cfg.runs)) if run_indices is None else [int(i) for i in run_indices]
    if not indices:
        raise ConfigError("no runs requested")
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(lambda r: _single_run(cfg, r), indices))
    else:
        records = [_single_run(cfg, r) for r in indices]
    records.sort(key=lambda rec: rec.run_index)
    summary = summarize([rec.final_best for rec in records], cfg.objective().acceptance)
    return records, summary


def default_grid():
    """0.72, 0.73, ..., 1.02."""
    return [round(0.72 + 0.01 * k, 2) for k in range(31)]


@dataclass
class SweepResult:
    rows: list = field(default_factory=list)  # (mw, Summary), sorted by mw

    @property
    def best_mw(self) -> float:
        """Weight with the lowest mean final value (first one on ties)."""
        means = [s.mean for _, s in self.rows]
        return self.rows[int(np.argmin(means))][0]


def mw_sweep(base: ExperimentConfig, grid=None) -> SweepResult:
    """Run `base` (a ``cwafa`` config) once per constant weight in `grid`."""
    if base.algorithm != "cwafa":
        raise ConfigError("mw_sweep needs a cwafa configuration")
    grid = default_grid() if grid is None else list(grid)
    if not grid:
        raise ConfigError("empty movement-weight grid")
    configs = [replace(base, mw=float(mw)) for mw in sorted(grid)]
    for cfg in configs:
        cfg.validate()
    return SweepResult([(cfg.mw, run_experiment(cfg)[1]) for cfg in configs])


@dataclass(frozen=True)
class CompareRow:
    function: str
    dimension: int
    algorithm: str
    runs: int
    summary: Summary


def compare(functions=FUNCTION_NAMES, dimensions=(10, 20, 30), iterations=1000, runs=50,
            seed=0, algorithms=ALGORITHMS, population=30, keep_records=False):
    """
    Summaries for every (function, dimension, algorithm) cell.

    All cells are validated before the first run. Every cell uses the same
    master seed. With ``keep_records=True`` a dict of the per-cell run
    records is returned as a second value.
    """
    configs = [
        ExperimentConfig(function=f,
                         dimension=int(d), algorithm=a, iterations=iterations, runs=runs,
                         master_seed=seed, population=population)
        for f in _checked_functions(functions) for d in dimensions for a in algorithms
    ]
    for cfg in configs:
        cfg.validate()
    rows = []
    records = {}
    for cfg in configs:
        recs, summary = run_experiment(cfg)
        rows.append(CompareRow(cfg.function, cfg.dimension, cfg.algorithm, cfg.runs, summary))
        if keep_records:
            records[(cfg.function, cfg.dimension, cfg.algorithm)] = recs
    return (rows, records) if keep_records else rows


def _checked_functions(functions):
    out = []
    for f in functions:
        try:
            out.append(canonical_name(f))
        except ValueError as exc:
            raise ConfigError(str(exc)) from None
    return out
