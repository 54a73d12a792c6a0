"""
Shared numeric building blocks: points, scalar box bounds, distances and
the per-run random stream.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "Bounds",
    "EvalCounter",
    "RngStream",
    "as_point",
    "clamp_to_bounds",
    "euclidean_distance",
    "random_point_in_bounds",
]


def as_point(x, dimension=None):
    """Return `x` as a finite 1-D float64 array, optionally checking its length."""
    p = np.asarray(x, dtype=np.float64)
    if p.ndim != 1 or p.size == 0:
        raise ValueError(f"a point must be a non-empty 1-D sequence, got shape {p.shape}")
    if dimension is not None and p.size != dimension:
        raise ValueError(f"expected a point of dimension {dimension}, got {p.size}")
    if not np.all(np.isfinite(p)):
        raise ValueError("point coordinates must be finite")
    return p


@dataclass(frozen=True)
class Bounds:
    """Hypercube ``[lower, upper]^D``, identical on every axis."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (np.isfinite(self.lower) and np.isfinite(self.upper)):
            raise ValueError("bounds must be finite")
        if not self.lower < self.upper:
            raise ValueError(f"need lower < upper, got [{self.lower}, {self.upper}]")

    @property
    def range_length(self) -> float:
        return float(self.upper - self.lower)

    def contains(self, x) -> bool:
        x = np.asarray(x)
        return bool(np.all((x >= self.lower) & (x <= self.upper)))


class RngStream:
    """
    Deterministic random stream for one run.

    The stream for ``(master_seed, run_index)`` is numpy's PCG64 seeded by
    ``SeedSequence(master_seed, spawn_key=(run_index,))``, i.e. the
    ``run_index``-th child of ``SeedSequence(master_seed).spawn``. Streams
    for different run indices are statistically independent.

    Parameters
    ----------
    master_seed : int
        Non-negative seed shared by every run of an experiment (< 2**64).
    run_index : int, default 0
        Index of the run.
    """

    def __init__(self, master_seed: int, run_index: int = 0):
        master_seed = int(master_seed)
        run_index = int(run_index)
        if not 0 <= master_seed < 2**64:
            raise ValueError("master_seed must be a 64-bit unsigned integer")
        if run_index < 0:
            raise ValueError("run_index must be non-negative")
        self.master_seed = master_seed
        self.run_index = run_index
        seq = np.random.SeedSequence(master_seed, spawn_key=(run_index,))
        self.generator = np.random.Generator(np.random.PCG64(seq))

    def __repr__(self):
        return f"RngStream(master_seed={self.master_seed}, run_index={self.run_index})"

    def uniform01(self, size=None):
        """Uniform draw(s) on [0, 1)."""
        return self.generator.random(size)

    def uniform_pm1(self, size=None):
        """Uniform draw(s) on [-1, 1)."""
        return 2.0 * self.generator.random(size) - 1.0


class EvalCounter:
    """Number of objective evaluations performed.

    The count lives in a one-element int64 array so compiled kernels can
    increment it in place.
    """

    def __init__(self, count: int = 0):
        self.cell = np.array([count], dtype=np.int64)

    @property
    def count(self) -> int:
        return int(self.cell[0])

    def increment(self, n: int = 1):
        self.cell[0] += n

    def __repr__(self):
        return f"EvalCounter({self.count})"


def euclidean_distance(a, b) -> float:
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return float(np.linalg.norm(a - b))


def clamp_to_bounds(p, bounds: Bounds):
    """Project every coordinate of `p` onto ``[bounds.lower, bounds.upper]``."""
    return np.clip(np.asarray(p, dtype=np.float64), bounds.lower, bounds.upper)


def random_point_in_bounds(bounds: Bounds, d: int, rng: RngStream):
    """Draw a point uniformly from the hypercube ``bounds^d``."""
    if d <= 0:
        raise ValueError("dimension must be positive")
    return bounds.lower + bounds.range_length * rng.uniform01(d)
