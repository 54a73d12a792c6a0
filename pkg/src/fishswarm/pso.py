"""
Global-best particle swarm optimisation with a linearly decreasing
inertia weight (0.9 -> 0.4) and ``c1 = c2 = 2``.

Velocities start at zero and are clamped per dimension to half the range
length; positions are clamped to the bounds without reflecting the
velocity.
"""

from __future__ import annotations

import numpy as np
from numba import njit

from .benchmarks import Objective
from .core import EvalCounter, RngStream
from .results import RunRecord

__all__ = ["inertia_weight", "pso_run", "W_START", "W_END", "C1", "C2"]

W_START = 0.9
W_END = 0.4
C1 = C2 = 2.0


def inertia_weight(itr: int, itr_max: int) -> float:
    """``0.9 - 0.5 * itr / itr_max``."""
    if not 0 <= itr <= itr_max:
        raise ValueError(f"iteration {itr} outside [0, {itr_max}]")
    return W_START - (W_START - W_END) * itr / itr_max


@njit(cache=True, nogil=True)
def _pso_loop(func, n, dim, lo, hi, vmax, itr_max, w_start, w_end, c1, c2, gen, counter):
    x = np.empty((n, dim))
    for i in range(n):
        for k in range(dim):
            x[i, k] = lo + (hi - lo) * gen.random()
    v = np.zeros((n, dim))
    pbest = x.copy()
    pfit = np.empty(n)
    for i in range(n):
        pfit[i] = func(x[i])
        counter[0] += 1
    g = 0
    for i in range(1, n):
        if pfit[i] < pfit[g]:
            g = i
    gbest = pbest[g].copy()
    gfit = pfit[g]

    best_tr = np.empty(itr_max + 1)
    w_tr = np.empty(itr_max + 1)
    best_tr[0] = gfit
    w_tr[0] = np.nan
    for t in range(1, itr_max + 1):
        w = w_start - (w_start - w_end) * t / itr_max
        for i in range(n):
            for k in range(dim):
                r1 = gen.random()
                r2 = gen.random()
                vk = (w * v[i, k] + c1 * r1 * (pbest[i, k] - x[i, k])
                      + c2 * r2 * (gbest[k] - x[i, k]))
                vk = min(max(vk, -vmax), vmax)
                v[i, k] = vk
                x[i, k] = min(max(x[i, k] + vk, lo), hi)
            f = func(x[i])
            counter[0] += 1
            if f < pfit[i]:
                pfit[i] = f
                pbest[i] = x[i]
        # synchronous global-best update
        for i in range(n):
            if pfit[i] < gfit:
                gfit = pfit[i]
                gbest[:] = pbest[i]
        best_tr[t] = gfit
        w_tr[t] = w
    return best_tr, w_tr, gbest, x, v, pbest, pfit


def pso_run(obj: Objective, itr_max: int, rng: RngStream, population: int | None = None,
            run_index: int | None = None) -> RunRecord:
    """
    Run GPSO for `itr_max` iterations.

    Parameters
    ----------
    obj : Objective
        Problem to minimise.
    itr_max : int
        Number of velocity/position updates.
    rng : RngStream
        Random stream for this run.
    population : int, optional
        Swarm size, ``5 * D`` by default.

    Returns
    -------
    RunRecord
        ``mw`` holds the inertia weight used at each iteration; ``visual``
        and ``step`` are NaN.
    """
    if itr_max < 0:
        raise ValueError("itr_max must be non-negative")
    n = 5 * obj.dimension if population is None else int(population)
    if n < 1:
        raise ValueError("population must be positive")
    counter = EvalCounter()
    vmax = obj.bounds.range_length / 2.0
    best, w, gbest, x, v, pbest, pfit = _pso_loop(
        obj.func, n, obj.dimension, obj.bounds.lower, obj.bounds.upper, vmax,
        int(itr_max), W_START, W_END, C1, C2, rng.generator, counter.cell)
    nan = np.full(best.size, np.nan)
    return RunRecord(
        run_index=rng.run_index if run_index is None else run_index,
        best_fitness=best, visual=nan, step=nan.copy(), mw=w,
        final_best=float(best[-1]), evaluations=counter.count,
        best_position=gbest, final_positions=x,
    )
