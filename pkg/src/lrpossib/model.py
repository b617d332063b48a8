"""Statistical model protocol plus sample-admissibility checking.

A model owns a parameter space and a log-likelihood.  Conventions the
whole package leans on:

* loglik returns -inf where the likelihood vanishes and never NaN;
* 0*log(0) counts as 0, so boundary parameter points evaluate to the
  limiting value and suprema over closures come out right;
* models may expose closed-form maximizers (global, over a box, or over
  a tagged region family); returning None hands the job to the numeric
  engine.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

import numpy as np

from .errors import InputError
from .regions import Region
from .space import ContinuousSpace, FiniteSpace, Interval

# Log-likelihoods above this are treated as diverging to +inf: the sample
# then has no finite supremum and evidence values are undefined for it.
LOGLIK_CAP = 700.0


class SampleStatus(Enum):
    OK = "ok"
    NOT_IN_XSTAR = "not_in_Xstar"
    C1_VIOLATED = "c1_violated"


class StatModel:
    """Base class; subclasses fill in `name`, `space`, and `loglik`."""

    name: str = "model"
    space: ContinuousSpace | FiniteSpace

    # -- likelihood ---------------------------------------------------------

    def loglik(self, theta, x) -> float:
        raise NotImplementedError

    def batch_loglik(self, thetas: np.ndarray, x) -> np.ndarray:
        """Vectorized loglik over an (N, d) array; default is a row loop."""
        return np.fromiter(
            (self.loglik(tuple(row), x) for row in thetas),
            dtype=float,
            count=thetas.shape[0],
        )

    # -- sample handling ----------------------------------------------------

    def check_sample(self, x) -> None:
        """Raise InputError when x is outside the sample space."""

    # -- closed-form maximizers (all optional) ------------------------------

    def global_mle(self, x) -> list | None:
        """Full maximum-likelihood set when known in closed form."""
        return None

    def sup_hint(self, x) -> float | None:
        """Known supremum of the loglik when no maximizer exists; used
        by sample validation to flag divergence exactly."""
        return None

    def box_argmax(self, intervals: tuple[Interval, ...], x):
        """Maximizer of loglik over a closed box, or None."""
        return None

    def region_argmax(self, region: Region, x):
        """Maximizer over a region the model recognizes by family tag."""
        return None


def validate_sample(model: StatModel, x) -> SampleStatus:
    """Classify a sample: usable, diverging supremum, or likelihood
    identically zero.  Raises InputError when x is not even a sample.

    Finite spaces are checked exactly by enumeration.  Continuous models
    with a closed-form MLE are checked at that maximizer; otherwise a
    coarse probe scan looks for divergence past LOGLIK_CAP, which is a
    heuristic and is documented as such.
    """
    model.check_sample(x)
    space = model.space
    if isinstance(space, FiniteSpace):
        vals = [model.loglik(i, x) for i in range(len(space))]
        best = max(vals)
        if best == -math.inf:
            return SampleStatus.C1_VIOLATED
        if best > LOGLIK_CAP:
            return SampleStatus.NOT_IN_XSTAR
        return SampleStatus.OK
    hint = model.sup_hint(x)
    mles = model.global_mle(x)
    if hint is not None:
        best = hint
    elif mles:
        best = max(model.loglik(p, x) for p in mles)
    else:
        best = _probe_best(model, x)
    if best > LOGLIK_CAP:
        return SampleStatus.NOT_IN_XSTAR
    if best == -math.inf:
        return SampleStatus.C1_VIOLATED
    return SampleStatus.OK


def _probe_best(model: StatModel, x) -> float:
    space = model.space
    axes = []
    for iv in space.bounds:
        lo = iv.lo if math.isfinite(iv.lo) else -1e3
        hi = iv.hi if math.isfinite(iv.hi) else 1e3
        axes.append(np.linspace(lo, hi, 41))
    grids = np.meshgrid(*axes, indexing="ij")
    pts = np.column_stack([g.ravel() for g in grids])
    if space.feasible is not None:
        keep = np.fromiter(
            (space.feasible(tuple(row)) for row in pts), dtype=bool, count=len(pts)
        )
        pts = pts[keep]
    if len(pts) == 0:
        return -math.inf
    vals = model.batch_loglik(pts, x)
    return float(np.max(vals)) if len(vals) else -math.inf


@dataclass(frozen=True)
class TableModel(StatModel):
    """Finite model given by an explicit likelihood table.

    `table` maps each sample value to a tuple of LINEAR likelihoods, one
    per parameter point.  Rows need not be normalized: only ratios enter
    any quantity this package computes, except the Bayes helpers, which
    document the same convention.
    """

    labels: tuple[str, ...]
    table: dict
    name: str = "table"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "space", FiniteSpace(self.labels))
        for x, row in self.table.items():
            if len(row) != len(self.labels):
                raise InputError(
                    f"table row for {x!r} has {len(row)} entries, need {len(self.labels)}"
                )
            if any(v < 0 for v in row):
                raise InputError(f"table row for {x!r} has negative likelihoods")

    def check_sample(self, x) -> None:
        if x not in self.table:
            raise InputError(f"sample {x!r} outside the sample space of {self.name}")

    def loglik(self, theta, x) -> float:
        i = self.space.check_point(theta)
        v = self.table[x][i]
        return math.log(v) if v > 0 else -math.inf
