"""Parameter spaces and the interval primitive shared with region geometry.

A parameter space is either a product of real intervals (optionally cut
down by a feasibility callable, e.g. the probability simplex) or a finite
list of labelled points addressed by index.  Points in a continuous space
are tuples of floats; points in a finite space are plain integer indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import InputError

Point = "tuple[float, ...] | int"


@dataclass(frozen=True)
class Interval:
    """A real interval with independently open or closed ends.

    Infinite ends are allowed and are treated as open regardless of the
    flags; lo == hi with both ends closed denotes a single point.
    """

    lo: float
    hi: float
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self):
        if math.isnan(self.lo) or math.isnan(self.hi):
            raise InputError("interval ends must not be NaN")
        if self.lo > self.hi:
            raise InputError(f"empty interval: lo={self.lo} > hi={self.hi}")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise InputError("degenerate interval must be closed on both ends")

    def contains(self, t: float, closure: bool = False) -> bool:
        if closure:
            return self.lo <= t <= self.hi
        if t < self.lo or (t == self.lo and self.lo_open and not math.isinf(self.lo)):
            return False
        if t > self.hi or (t == self.hi and self.hi_open and not math.isinf(self.hi)):
            return False
        return not math.isinf(t)

    @property
    def bounded(self) -> bool:
        return not (math.isinf(self.lo) or math.isinf(self.hi))

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class ContinuousSpace:
    """Product of intervals, optionally intersected with a feasibility test.

    `feasible` narrows the box (the trinomial simplex is the one user in
    this package); it must accept a tuple of floats and return a bool.
    """

    bounds: tuple[Interval, ...]
    feasible: Callable[[tuple], bool] | None = field(default=None, compare=False)

    def __post_init__(self):
        if not self.bounds:
            raise InputError("continuous space needs at least one axis")
        object.__setattr__(self, "bounds", tuple(self.bounds))

    @property
    def dim(self) -> int:
        return len(self.bounds)

    def contains(self, point, closure: bool = False) -> bool:
        if not isinstance(point, tuple) or len(point) != self.dim:
            return False
        for iv, t in zip(self.bounds, point):
            if not iv.contains(float(t), closure=closure):
                return False
        if self.feasible is not None and not self.feasible(point):
            return False
        return True

    def check_point(self, point) -> tuple[float, ...]:
        if not isinstance(point, (tuple, list)) or len(point) != self.dim:
            raise InputError(
                f"parameter point must be a {self.dim}-tuple, got {point!r}"
            )
        pt = tuple(float(t) for t in point)
        if not self.contains(pt, closure=True):
            raise InputError(f"parameter point {pt} outside the parameter space")
        return pt


@dataclass(frozen=True)
class FiniteSpace:
    """Finitely many parameter points addressed by index 0..len-1.

    `values` keeps the underlying mathematical parameter for display and
    for exact arithmetic; the optimizer only ever sees indices.
    """

    labels: tuple[str, ...]
    values: tuple = ()

    def __post_init__(self):
        if not self.labels:
            raise InputError("finite space needs at least one point")
        if len(set(self.labels)) != len(self.labels):
            raise InputError("finite space labels must be unique")
        object.__setattr__(self, "labels", tuple(self.labels))
        vals = tuple(self.values) if self.values else tuple(self.labels)
        if len(vals) != len(self.labels):
            raise InputError("values must align with labels")
        object.__setattr__(self, "values", vals)

    @property
    def dim(self) -> int:
        return 0

    def __len__(self) -> int:
        return len(self.labels)

    def contains(self, point, closure: bool = False) -> bool:
        return isinstance(point, int) and 0 <= point < len(self.labels)

    def check_point(self, point) -> int:
        if isinstance(point, bool) or not isinstance(point, int):
            raise InputError(f"finite-space point must be an int index, got {point!r}")
        if not 0 <= point < len(self.labels):
            raise InputError(
                f"index {point} out of range for {len(self.labels)} points"
            )
        return point


def closed_box(*pairs: Sequence[float]) -> tuple[Interval, ...]:
    """Convenience: ((lo, hi), ...) -> tuple of closed Intervals."""
    return tuple(Interval(float(a), float(b)) for a, b in pairs)
