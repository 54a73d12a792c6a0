"""
Benchmark objectives (all minimised, global minimum 0).

==========  ===================  ==========
name        search space         acceptance
==========  ===================  ==========
sphere      [-500, 500]^D        0.01
rosenbrock  [-10, 10]^D          100
ackley      [-32, 32]^D          0.01
griewank    [-600, 600]^D        0.01
==========  ===================  ==========

The functions are numba-compiled so the swarm kernels can call them
without leaving native code; they are also plain callables from Python.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numba import njit
from numba.core.registry import CPUDispatcher

from .core import Bounds, EvalCounter, as_point

__all__ = [
    "Objective",
    "ackley",
    "griewank",
    "lookup",
    "rosenbrock",
    "sphere",
    "FUNCTION_NAMES",
]


@njit(cache=True)
def sphere(x):
    s = 0.0
    for v in x:
        s += v * v
    return s


@njit(cache=True)
def rosenbrock(x):
    # Canonical banana valley: 100 (x[i+1] - x[i]^2)^2 + (x[i] - 1)^2.
    if x.size < 2:
        raise ValueError("rosenbrock needs dimension >= 2")
    s = 0.0
    for i in range(x.size - 1):
        a = x[i + 1] - x[i] * x[i]
        b = x[i] - 1.0
        s += 100.0 * a * a + b * b
    return s


@njit(cache=True)
def ackley(x):
    n = x.size
    sq = 0.0
    cs = 0.0
    for v in x:
        sq += v * v
        cs += math.cos(2.0 * math.pi * v)
    return (20.0 + math.e
            - 20.0 * math.exp(-0.2 * math.sqrt(sq / n))
            - math.exp(cs / n))


@njit(cache=True)
def griewank(x):
    s = 0.0
    p = 1.0
    for i in range(x.size):
        s += x[i] * x[i] / 4000.0
        p *= math.cos(x[i] / math.sqrt(i + 1.0))
    return s - p + 1.0


@dataclass(frozen=True)
class Objective:
    """
    A named objective with its search box and "solved" threshold.

    Parameters
    ----------
    name : str
        Registry name.
    func : numba dispatcher
        Compiled ``f(x: float64[:]) -> float``. Plain Python callables are
        compiled with ``numba.njit`` on construction.
    bounds : Bounds
        Search box, identical on every axis.
    dimension : int
        Problem dimension.
    acceptance : float
        A run counts as solved when its final best value is below this.
    """

    name: str
    func: CPUDispatcher
    bounds: Bounds
    dimension: int
    acceptance: float
    min_dimension: int = 1

    def __post_init__(self):
        if self.dimension < self.min_dimension:
            raise ValueError(
                f"{self.name} needs dimension >= {self.min_dimension}, got {self.dimension}")
        if not isinstance(self.func, CPUDispatcher):
            object.__setattr__(self, "func", njit(self.func))

    def evaluate(self, x, counter: EvalCounter | None = None) -> float:
        x = as_point(x, self.dimension)
        if counter is not None:
            counter.increment()
        return float(self.func(x))

    __call__ = evaluate


# name -> (function, lower, upper, acceptance, min_dimension)
_REGISTRY = {
    "sphere": (sphere, -500.0, 500.0, 0.01, 1),
    "rosenbrock": (rosenbrock, -10.0, 10.0, 100.0, 2),
    "ackley": (ackley, -32.0, 32.0, 0.01, 1),
    "griewank": (griewank, -600.0, 600.0, 0.01, 1),
}
_ALIASES = {"ackly": "ackley"}

FUNCTION_NAMES = tuple(_REGISTRY)


def canonical_name(name: str) -> str:
    key = name.strip().lower()
    key = _ALIASES.get(key, key)
    if key not in _REGISTRY:
        raise ValueError(
            f"unknown function {name!r}; valid names: {', '.join(FUNCTION_NAMES)}")
    return key


def lookup(name: str, dimension: int) -> Objective:
    """Build the registered objective `name` in `dimension` dimensions."""
    key = canonical_name(name)
    func, lower, upper, acceptance, min_dim = _REGISTRY[key]
    return Objective(key, func, Bounds(lower, upper), int(dimension), acceptance, min_dim)


def known_optimum(name: str, dimension: int) -> np.ndarray:
    key = canonical_name(name)
    return np.ones(dimension) if key == "rosenbrock" else np.zeros(dimension)
