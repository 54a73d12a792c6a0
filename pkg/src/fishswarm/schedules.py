"""
Movement Weight schedules.

Each iteration the swarm's visual and step are multiplied by the current
movement weight, so the weights compound::

    visual_t = mw_t * visual_{t-1}
    step_t   = mw_t * step_{t-1}

Four policies produce ``mw_t``:

* ``constant``   -- a fixed weight (``1.0`` recovers standard AFSA).
* ``lindec``     -- ``mw_min + (T - t) / T * (mw_max - mw_min)``, from
  ``mw_max`` at ``t = 0`` down to ``mw_min`` at ``t = T``.
* ``lininc``     -- ``mw_max - (T - t) / T * (mw_max - mw_min)``, the mirror image.
* ``random``     -- ``mw_min + u * (mw_max - mw_min)`` with ``u ~ U[0, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numba import njit

from .core import RngStream

__all__ = ["MwSchedule", "apply_update", "mw_at", "parse_schedule"]

CONSTANT, LINEAR_DECREASING, LINEAR_INCREASING, RANDOM = 0, 1, 2, 3

_KIND_CODES = {
    "constant": CONSTANT,
    "lindec": LINEAR_DECREASING,
    "lininc": LINEAR_INCREASING,
    "random": RANDOM,
}


@dataclass(frozen=True)
class MwSchedule:
    """
    A movement-weight policy over ``itr_max`` iterations.

    Use the named constructors rather than building instances directly.
    For ``constant`` schedules ``mw_min == mw_max == mw``.
    """

    kind: str
    mw_min: float
    mw_max: float
    itr_max: int

    def __post_init__(self):
        if self.kind not in _KIND_CODES:
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.itr_max <= 0:
            raise ValueError("itr_max must be positive")
        if not (np.isfinite(self.mw_min) and np.isfinite(self.mw_max)):
            raise ValueError("movement weights must be finite")
        if not 0 < self.mw_min <= self.mw_max:
            raise ValueError(
                f"need 0 < mw_min <= mw_max, got mw_min={self.mw_min}, mw_max={self.mw_max}")
        if self.kind == "constant" and self.mw_min != self.mw_max:
            raise ValueError("a constant schedule has a single weight")

    @classmethod
    def constant(cls, mw, itr_max):
        return cls("constant", float(mw), float(mw), int(itr_max))

    @classmethod
    def linear_decreasing(cls, mw_min, mw_max, itr_max):
        return cls("lindec", float(mw_min), float(mw_max), int(itr_max))

    @classmethod
    def linear_increasing(cls, mw_min, mw_max, itr_max):
        return cls("lininc", float(mw_min), float(mw_max), int(itr_max))

    @classmethod
    def random(cls, mw_min, mw_max, itr_max):
        return cls("random", float(mw_min), float(mw_max), int(itr_max))

    @property
    def code(self) -> int:
        return _KIND_CODES[self.kind]

    @property
    def mw(self) -> float:
        if self.kind != "constant":
            raise AttributeError("only constant schedules have a single mw")
        return self.mw_min

    def with_itr_max(self, itr_max):
        return MwSchedule(self.kind, self.mw_min, self.mw_max, int(itr_max))

    def to_string(self) -> str:
        if self.kind == "constant":
            return f"constant:{self.mw_min!r}"
        return f"{self.kind}:{self.mw_min!r}:{self.mw_max!r}"


@njit(cache=True)
def _mw_kernel(code, mw_min, mw_max, itr, itr_max, gen):
    if code == CONSTANT:
        return mw_min
    if code == LINEAR_DECREASING:
        return mw_min + (itr_max - itr) / itr_max * (mw_max - mw_min)
    if code == LINEAR_INCREASING:
        return mw_max - (itr_max - itr) / itr_max * (mw_max - mw_min)
    return mw_min + gen.random() * (mw_max - mw_min)


def mw_at(schedule: MwSchedule, itr: int, rng: RngStream | None = None) -> float:
    """Movement weight at iteration `itr` (``0 <= itr <= itr_max``).

    `rng` is only consumed by ``random`` schedules and may be omitted for
    the deterministic ones.
    """
    itr = int(itr)
    if not 0 <= itr <= schedule.itr_max:
        raise ValueError(f"iteration {itr} outside [0, {schedule.itr_max}]")
    if schedule.kind == "random":
        if rng is None:
            raise ValueError("a random schedule needs an RngStream")
        gen = rng.generator
    else:
        # never drawn from; the kernel just needs a Generator-typed argument
        gen = _DUMMY_GENERATOR
    return float(_mw_kernel(schedule.code, schedule.mw_min, schedule.mw_max,
                            itr, schedule.itr_max, gen))


_DUMMY_GENERATOR = np.random.default_rng(0)


def apply_update(visual: float, step: float, mw: float) -> tuple[float, float]:
    """Scale visual and step by `mw`."""
    if not (visual > 0 and step > 0 and mw > 0):
        raise ValueError(
            f"visual, step and mw must be positive, got {visual}, {step}, {mw}")
    return mw * visual, mw * step


def parse_schedule(text: str, itr_max: int) -> MwSchedule:
    """
    Parse ``constant:0.96``, ``lindec:0.95:0.99``, ``lininc:0.95:0.99`` or
    ``random:0.95:0.99``.
    """
    parts = text.strip().split(":")
    kind = parts[0].strip().lower()
    if kind not in _KIND_CODES:
        raise ValueError(f"unknown schedule kind in {text!r}; expected one of {sorted(_KIND_CODES)}")
    expected = 2 if kind == "constant" else 3
    if len(parts) != expected:
        raise ValueError(f"malformed schedule {text!r}")
    try:
        values = [float(p) for p in parts[1:]]
    except ValueError:
        raise ValueError(f"malformed schedule {text!r}") from None
    if kind == "constant":
        return MwSchedule.constant(values[0], itr_max)
    return MwSchedule(kind, values[0], values[1], int(itr_max))
