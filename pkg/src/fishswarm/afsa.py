"""
Artificial Fish Swarm Algorithm (minimisation) with movement-weight
control of visual and step.

``visual`` is a per-coordinate perception radius: prey candidates are
drawn from the box ``x +/- visual`` and two fish are neighbours when their
Euclidean distance is below ``visual * sqrt(D)``.

Per iteration every fish, in index order:

1. builds two optional moves from its neighbours: towards their centre
   (*swarm*) and towards the best of them (*follow*). A move is only
   proposed when the target is strictly better than the fish and the
   neighbourhood is not crowded (``n_neighbours / population < delta``);
2. takes the proposed move whose target is better (ties go to follow);
3. otherwise *preys*: up to ``try_number`` candidates are drawn around the
   fish at a random scale inside the visual box; whenever one improves on
   the current point the fish lands there and keeps searching from it;
4. if no prey attempt improves, it makes a *free move* in a uniformly
   random direction.

Swarm, follow and free moves have length ``step * u`` with
``u ~ U[0, 1)``. Every position is clamped to the bounds. After all fish
have moved, visual and step are multiplied by the schedule's movement
weight.

The bulletin keeps the best point evaluated during the run, including
prey candidates and swarm centres.

The numerical work is done by numba kernels that draw from the run's
``numpy.random.Generator`` directly, so the public functions here and the
full-run driver share one code path and one random sequence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

import numpy as np
from numba import njit

from .benchmarks import Objective
from .core import Bounds, EvalCounter, RngStream
from .results import RunRecord
from .schedules import MwSchedule, _mw_kernel

__all__ = [
    "Fish",
    "SwarmParams",
    "SwarmState",
    "follow_behavior",
    "free_move",
    "init_swarm",
    "prey",
    "run",
    "step_iteration",
    "swarm_behavior",
]

_ZERO_DISTANCE = 1e-15


@dataclass(frozen=True)
class SwarmParams:
    """
    Parameters
    ----------
    population : int
        Number of fish.
    visual0, step0 : float
        Initial perception radius and maximum move length.
    try_number : int
        Prey attempts before falling back to a free move.
    delta : float
        Crowd factor in (0, 1).
    itr_max : int
        Number of iterations of a full run.
    """

    population: int = 30
    visual0: float = 1.0
    step0: float = 1.0
    try_number: int = 10
    delta: float = 0.5
    itr_max: int = 1000

    def __post_init__(self):
        if self.population < 1:
            raise ValueError("population must be positive")
        if not (self.visual0 > 0 and self.step0 > 0):
            raise ValueError("visual0 and step0 must be positive")
        if self.try_number < 1:
            raise ValueError("try_number must be positive")
        if not 0 < self.delta < 1:
            raise ValueError("delta must lie in (0, 1)")
        if self.itr_max < 0:
            raise ValueError("itr_max must be non-negative")

    @classmethod
    def for_objective(cls, obj: Objective, itr_max=1000, population=30, try_number=10,
                      delta=0.5, visual_fraction=0.40, step_fraction=0.25):
        """Defaults scaled to the objective's range: visual 40 %, step 25 %."""
        length = obj.bounds.range_length
        return cls(population=population, visual0=visual_fraction * length,
                   step0=step_fraction * length, try_number=try_number, delta=delta,
                   itr_max=itr_max)


@dataclass(frozen=True)
class Fish:
    position: np.ndarray
    fitness: float


@dataclass
class SwarmState:
    """Population, bulletin and the current visual/step.

    ``positions`` has shape ``(population, D)``; ``fitness[i]`` is the
    objective value at ``positions[i]``.
    """

    positions: np.ndarray
    fitness: np.ndarray
    bulletin_position: np.ndarray
    bulletin_fitness: float
    visual: float
    step: float
    iteration: int
    params: SwarmParams
    evaluations: EvalCounter = field(default_factory=EvalCounter)
    bounds: Bounds | None = None

    @property
    def fish(self):
        return tuple(Fish(p.copy(), float(f)) for p, f in zip(self.positions, self.fitness))

    @property
    def population(self) -> int:
        return self.positions.shape[0]

    def copy(self):
        return replace(self, positions=self.positions.copy(), fitness=self.fitness.copy(),
                       bulletin_position=self.bulletin_position.copy(),
                       evaluations=EvalCounter(self.evaluations.count))


# --------------------------------------------------------------------------
# kernels

@njit(cache=True)
def _clip(v, lo, hi):
    return min(max(v, lo), hi)


@njit(cache=True)
def _evaluate(func, x, counter, best_pos, best_fit):
    f = func(x)
    counter[0] += 1
    if f < best_fit[0]:
        best_fit[0] = f
        best_pos[:] = x
    return f


@njit(cache=True)
def _move_toward(xi, target, step, u, lo, hi):
    d2 = 0.0
    for k in range(xi.size):
        d = target[k] - xi[k]
        d2 += d * d
    norm = math.sqrt(d2)
    out = xi.copy()
    if norm < _ZERO_DISTANCE:
        return out
    scale = step * u / norm
    for k in range(xi.size):
        out[k] = _clip(xi[k] + scale * (target[k] - xi[k]), lo, hi)
    return out


@njit(cache=True)
def _free_move(xi, step, lo, hi, gen):
    dim = xi.size
    direction = np.empty(dim)
    d2 = 0.0
    for k in range(dim):
        direction[k] = gen.standard_normal()
        d2 += direction[k] * direction[k]
    u = gen.random()
    norm = math.sqrt(d2)
    out = xi.copy()
    if norm < _ZERO_DISTANCE:
        return out
    scale = step * u / norm
    for k in range(dim):
        out[k] = _clip(xi[k] + scale * direction[k], lo, hi)
    return out


@njit(cache=True)
def _prey(func, pos, fit, i, visual, step, try_number, lo, hi, gen, counter,
          best_pos, best_fit):
    """Returns (new_point, its_fitness); the fitness is NaN after a free move."""
    cur = pos[i].copy()
    fcur = fit[i]
    found = False
    cand = np.empty(cur.size)
    for _ in range(try_number):
        scale = visual * gen.random()
        for k in range(cur.size):
            cand[k] = _clip(cur[k] + scale * (2.0 * gen.random() - 1.0), lo, hi)
        fc = _evaluate(func, cand, counter, best_pos, best_fit)
        if fc < fcur:
            cur[:] = cand
            fcur = fc
            found = True
    if found:
        return cur, fcur
    return _free_move(pos[i], step, lo, hi, gen), np.nan


@njit(cache=True)
def _neighbors(pos, i, visual):
    n, dim = pos.shape
    idx = np.empty(n, dtype=np.int64)
    radius = visual * math.sqrt(dim)
    count = 0
    for j in range(n):
        if j == i:
            continue
        d2 = 0.0
        for k in range(dim):
            d = pos[j, k] - pos[i, k]
            d2 += d * d
        if math.sqrt(d2) < radius:
            idx[count] = j
            count += 1
    return idx[:count]


@njit(cache=True)
def _swarm(func, pos, fit, i, visual, step, delta, lo, hi, gen, counter,
           best_pos, best_fit):
    """Returns (moved, new_point, centre_fitness)."""
    n, dim = pos.shape
    nbr = _neighbors(pos, i, visual)
    nf = nbr.size
    if nf == 0 or nf / n >= delta:
        return False, pos[i].copy(), np.inf
    centre = np.zeros(dim)
    for j in nbr:
        for k in range(dim):
            centre[k] += pos[j, k]
    for k in range(dim):
        centre[k] /= nf
    fc = _evaluate(func, centre, counter, best_pos, best_fit)
    if not fc < fit[i]:
        return False, pos[i].copy(), np.inf
    u = gen.random()
    return True, _move_toward(pos[i], centre, step, u, lo, hi), fc


@njit(cache=True)
def _follow(pos, fit, i, visual, step, delta, lo, hi, gen):
    """Returns (moved, new_point, leader_fitness)."""
    n = pos.shape[0]
    nbr = _neighbors(pos, i, visual)
    nf = nbr.size
    if nf == 0 or nf / n >= delta:
        return False, pos[i].copy(), np.inf
    best = -1
    fbest = np.inf
    for j in nbr:
        if fit[j] < fbest:
            fbest = fit[j]
            best = j
    if best < 0 or not fbest < fit[i]:
        return False, pos[i].copy(), np.inf
    u = gen.random()
    return True, _move_toward(pos[i], pos[best], step, u, lo, hi), fbest


@njit(cache=True)
def _iterate(func, pos, fit, visual, step, try_number, delta, lo, hi, gen, counter,
             best_pos, best_fit):
    for i in range(pos.shape[0]):
        s_ok, s_pt, s_f = _swarm(func, pos, fit, i, visual, step, delta, lo, hi, gen,
                                 counter, best_pos, best_fit)
        f_ok, f_pt, f_f = _follow(pos, fit, i, visual, step, delta, lo, hi, gen)
        fnew = np.nan
        if s_ok and (not f_ok or s_f < f_f):
            new = s_pt
        elif f_ok:
            new = f_pt
        else:
            new, fnew = _prey(func, pos, fit, i, visual, step, try_number, lo, hi, gen,
                              counter, best_pos, best_fit)
        if np.isnan(fnew):
            fnew = _evaluate(func, new, counter, best_pos, best_fit)
        pos[i] = new
        fit[i] = fnew


@njit(cache=True)
def _init(func, population, dim, lo, hi, gen, counter, best_pos, best_fit):
    pos = np.empty((population, dim))
    fit = np.empty(population)
    for i in range(population):
        for k in range(dim):
            pos[i, k] = lo + (hi - lo) * gen.random()
        fit[i] = _evaluate(func, pos[i], counter, best_pos, best_fit)
    return pos, fit


@njit(cache=True, nogil=True)
def _run_loop(func, pos, fit, visual, step, try_number, delta, lo, hi,
              code, mw_min, mw_max, itr_max, gen, counter, best_pos, best_fit):
    best_tr = np.empty(itr_max + 1)
    vis_tr = np.empty(itr_max + 1)
    stp_tr = np.empty(itr_max + 1)
    mw_tr = np.empty(itr_max + 1)
    evals_tr = np.empty(itr_max + 1, dtype=np.int64)
    best_tr[0] = best_fit[0]
    vis_tr[0] = visual
    stp_tr[0] = step
    mw_tr[0] = np.nan
    evals_tr[0] = counter[0]
    for t in range(1, itr_max + 1):
        _iterate(func, pos, fit, visual, step, try_number, delta, lo, hi, gen, counter,
                 best_pos, best_fit)
        mw = _mw_kernel(code, mw_min, mw_max, t, itr_max, gen)
        visual = mw * visual
        step = mw * step
        best_tr[t] = best_fit[0]
        vis_tr[t] = visual
        stp_tr[t] = step
        mw_tr[t] = mw
        evals_tr[t] = counter[0]
    return best_tr, vis_tr, stp_tr, mw_tr, evals_tr


# --------------------------------------------------------------------------
# public operations

def _check_index(state, i):
    if not 0 <= i < state.population:
        raise IndexError(f"fish index {i} out of range for population {state.population}")


def _bulletin_cells(state):
    return state.bulletin_position, np.array([state.bulletin_fitness])


def init_swarm(obj: Objective, params: SwarmParams, rng: RngStream) -> SwarmState:
    """Scatter ``params.population`` fish uniformly over the search box."""
    counter = EvalCounter()
    best_pos = np.empty(obj.dimension)
    best_fit = np.array([np.inf])
    pos, fit = _init(obj.func, params.population, obj.dimension, obj.bounds.lower,
                     obj.bounds.upper, rng.generator, counter.cell, best_pos, best_fit)
    return SwarmState(pos, fit, best_pos, float(best_fit[0]), params.visual0, params.step0,
                      0, params, counter, obj.bounds)


def prey(state: SwarmState, i: int, obj: Objective, rng: RngStream) -> np.ndarray:
    """Prey move of fish `i`; falls back to :func:`free_move`.

    Candidate evaluations are counted and may improve the bulletin, so the
    counter and bulletin of `state` are updated in place.
    """
    _check_index(state, i)
    best_pos, best_fit = _bulletin_cells(state)
    out, _ = _prey(obj.func, state.positions, state.fitness, i, state.visual, state.step,
                state.params.try_number, obj.bounds.lower, obj.bounds.upper,
                rng.generator, state.evaluations.cell, best_pos, best_fit)
    state.bulletin_fitness = float(best_fit[0])
    return out


def free_move(state: SwarmState, i: int, rng: RngStream) -> np.ndarray:
    """Random move of length ``step * u`` in a uniformly random direction."""
    _check_index(state, i)
    b = state.bounds
    lo, hi = (-np.inf, np.inf) if b is None else (b.lower, b.upper)
    return _free_move(state.positions[i], state.step, lo, hi, rng.generator)


def swarm_behavior(state: SwarmState, i: int, obj: Objective, rng: RngStream):
    """Move towards the neighbourhood centre, or ``None`` if not allowed."""
    _check_index(state, i)
    best_pos, best_fit = _bulletin_cells(state)
    ok, point, _ = _swarm(obj.func, state.positions, state.fitness, i, state.visual,
                          state.step, state.params.delta, obj.bounds.lower,
                          obj.bounds.upper, rng.generator, state.evaluations.cell,
                          best_pos, best_fit)
    state.bulletin_fitness = float(best_fit[0])
    return point if ok else None


def follow_behavior(state: SwarmState, i: int, obj: Objective, rng: RngStream):
    """Move towards the best neighbour, or ``None`` if not allowed."""
    _check_index(state, i)
    ok, point, _ = _follow(state.positions, state.fitness, i, state.visual, state.step,
                           state.params.delta, obj.bounds.lower, obj.bounds.upper,
                           rng.generator)
    return point if ok else None


def step_iteration(state: SwarmState, obj: Objective, schedule: MwSchedule,
                   rng: RngStream) -> SwarmState:
    """Advance a copy of `state` by one iteration and return it."""
    if state.iteration >= schedule.itr_max:
        raise ValueError(
            f"iteration {state.iteration} already reached itr_max={schedule.itr_max}")
    new = state.copy()
    best_pos, best_fit = _bulletin_cells(new)
    _iterate(obj.func, new.positions, new.fitness, new.visual, new.step,
             new.params.try_number, new.params.delta, obj.bounds.lower, obj.bounds.upper,
             rng.generator, new.evaluations.cell, best_pos, best_fit)
    mw = _mw_kernel(schedule.code, schedule.mw_min, schedule.mw_max, new.iteration + 1,
                    schedule.itr_max, rng.generator)
    new.bulletin_fitness = float(best_fit[0])
    new.visual = mw * new.visual
    new.step = mw * new.step
    new.iteration += 1
    return new


def run(obj: Objective, params: SwarmParams, schedule: MwSchedule, rng: RngStream,
        run_index: int | None = None) -> RunRecord:
    """Run ``params.itr_max`` iterations from a fresh swarm."""
    if params.itr_max > 0 and schedule.itr_max != params.itr_max:
        raise ValueError(
            f"schedule itr_max {schedule.itr_max} != params itr_max {params.itr_max}")
    state = init_swarm(obj, params, rng)
    best_pos, best_fit = _bulletin_cells(state)
    best, vis, stp, mw, evals = _run_loop(
        obj.func, state.positions, state.fitness, state.visual, state.step,
        params.try_number, params.delta, obj.bounds.lower, obj.bounds.upper,
        schedule.code, schedule.mw_min, schedule.mw_max, params.itr_max,
        rng.generator, state.evaluations.cell, best_pos, best_fit)
    return RunRecord(
        run_index=rng.run_index if run_index is None else run_index,
        best_fitness=best, visual=vis, step=stp, mw=mw,
        final_best=float(best_fit[0]), evaluations=state.evaluations.count,
        evaluations_trace=evals, best_position=best_pos.copy(),
        final_positions=state.positions,
    )
