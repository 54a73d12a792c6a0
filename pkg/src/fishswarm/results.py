"""Run records and cross-run summaries."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = ["RunRecord", "Summary", "summarize"]


@dataclass
class RunRecord:
    """
    Convergence trace of one run.

    All trace arrays have length ``iterations + 1``; index 0 is the state
    right after initialisation. ``mw`` holds the weight applied at the end
    of each iteration (the inertia weight for PSO) and is NaN at index 0.
    For PSO, ``visual`` and ``step`` are NaN throughout.
    """

    run_index: int
    best_fitness: np.ndarray
    visual: np.ndarray
    step: np.ndarray
    mw: np.ndarray
    final_best: float
    evaluations: int
    evaluations_trace: np.ndarray | None = None
    best_position: np.ndarray | None = None
    final_positions: np.ndarray | None = None

    @property
    def iterations(self) -> np.ndarray:
        return np.arange(self.best_fitness.size)

    @property
    def n_iterations(self) -> int:
        return self.best_fitness.size - 1

    def rows(self):
        """Yield ``(iteration, best_fitness, visual, step, mw)`` tuples."""
        for t in range(self.best_fitness.size):
            yield (t, float(self.best_fitness[t]), float(self.visual[t]),
                   float(self.step[t]), float(self.mw[t]))


@dataclass(frozen=True)
class Summary:
    best: float
    mean: float
    std_dev: float
    solved_fraction: float
    runs: int = 0


def summarize(finals, acceptance: float) -> Summary:
    """
    Best, mean, sample standard deviation (``n - 1``; 0 for one run) and
    the fraction of runs strictly below `acceptance`.
    """
    x = np.asarray(finals, dtype=np.float64).ravel()
    if x.size == 0:
        raise ValueError("cannot summarize an empty set of runs")
    # sort first so the result does not depend on run order
    x = np.sort(x)
    std = float(np.std(x, ddof=1)) if x.size > 1 else 0.0
    return Summary(
        best=float(x[0]),
        mean=float(np.mean(x)),
        std_dev=std,
        solved_fraction=float(np.count_nonzero(x < acceptance)) / x.size,
        runs=int(x.size),
    )
