"""Hardy-Weinberg equilibrium on the trinomial simplex.

Genotype probabilities (theta1, theta2, theta3) are in equilibrium when
sqrt(theta3) = 1 - sqrt(theta1); the "<" side of that equation is the
inbreeding region and the ">" side the outbreeding region.  Restricted
to the curve the likelihood has a closed-form maximizer at
p~ = (m + y1 - y3) / (2m) with theta~ = (p~^2, 2 p~ (1-p~), (1-p~)^2),
and concavity of the log-likelihood makes the curve supremum equal the
supremum over whichever open side excludes the MLE.  That collapses the
three evidence values to one closed-form computation per sample.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .builtin import TrinomialModel
from .contour import ContourData, contour
from .errors import InputError
from .optimize import OptConfig
from .regions import Constraint, Region

CASE_INBREEDING = "mle_in_inbreeding"
CASE_OUTBREEDING = "mle_in_outbreeding"
CASE_ON_CURVE = "mle_on_curve"


@dataclass(frozen=True)
class HweSample:
    """Genotype counts (AA, Aa, aa) with at least one observation."""

    y1: int
    y2: int
    y3: int

    def __post_init__(self) -> None:
        for name in ("y1", "y2", "y3"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise InputError(f"{name}={v!r} must be a nonnegative integer")
        if self.m < 1:
            raise InputError("need at least one observation")

    @property
    def m(self) -> int:
        return self.y1 + self.y2 + self.y3

    @property
    def counts(self) -> tuple[int, int, int]:
        return (self.y1, self.y2, self.y3)


def _curve_g(p) -> float:
    t1, t3 = p[0], p[1]
    return np.sqrt(np.maximum(t1, 0.0)) + np.sqrt(np.maximum(t3, 0.0)) - 1.0


def hwe_regions() -> tuple[Region, Region, Region]:
    """(equilibrium curve, inbreeding side, outbreeding side).

    All three are constraints on sqrt(t1) + sqrt(t3) - 1 in the free
    coordinates (theta1, theta3); the curve has declared dimension 1,
    the open sides full dimension 2.
    """
    curve = Constraint(_curve_g, "==", 0.0, dim=1, family="hwe-curve")
    inbreeding = Constraint(_curve_g, "<", 0.0, dim=2, family="hwe-inbreeding")
    outbreeding = Constraint(_curve_g, ">", 0.0, dim=2, family="hwe-outbreeding")
    return curve, inbreeding, outbreeding


def hwe_side(sample: HweSample) -> int:
    """Sign of sqrt(mle3) - (1 - sqrt(mle1)), computed exactly.

    sqrt(y1/m) + sqrt(y3/m) >= 1 iff 4 y1 y3 >= y2^2 (square twice), so
    integer arithmetic decides the side with no float tolerance at all.
    """
    d = 4 * sample.y1 * sample.y3 - sample.y2 * sample.y2
    return (d > 0) - (d < 0)


def _tilde_triple(sample: HweSample) -> tuple[float, float, float]:
    # integer numerators make the components bit-symmetric under y1<->y3
    m = sample.m
    a = m + sample.y1 - sample.y3
    b = m + sample.y3 - sample.y1
    denom = float(4 * m * m)
    return (a * a / denom, 2 * a * b / denom, b * b / denom)


def hwe_curve_sup(sample: HweSample) -> tuple[tuple[float, float, float], float]:
    """The equilibrium-curve maximizer and its normalized likelihood.

    nu1 = exp(sum_i y_i (ln tilde_i - ln mle_i)) with 0*ln(0) terms
    dropped.  fsum keeps the value exactly symmetric under y1<->y3.
    """
    tilde = _tilde_triple(sample)
    m = sample.m
    terms = []
    for y, t in zip(sample.counts, tilde):
        if y == 0:
            continue
        if t <= 0.0:
            return tilde, 0.0
        terms.append(y * (math.log(t) - math.log(y / m)))
    if not terms:
        return tilde, 1.0
    return tilde, min(1.0, math.exp(math.fsum(terms)))


@dataclass(frozen=True)
class HweReport:
    """Evidence for the curve and both sides, plus the case that fixed it."""

    nu1: float
    nu2: float
    nu3: float
    mle: tuple[float, float, float]
    tilde_theta: tuple[float, float, float]
    case: str
    sample: HweSample


def hwe_report(sample: HweSample, cfg: OptConfig | None = None) -> HweReport:
    """Three-case evidence: the side holding the MLE gets 1, the curve
    gets the closed-form curve supremum, and the far side inherits the
    curve value by concavity."""
    m = sample.m
    mle = (sample.y1 / m, sample.y2 / m, sample.y3 / m)
    tilde, nu1 = hwe_curve_sup(sample)
    side = hwe_side(sample)
    if side == 0:
        return HweReport(1.0, 1.0, 1.0, mle, tilde, CASE_ON_CURVE, sample)
    if side < 0:
        return HweReport(nu1, 1.0, nu1, mle, tilde, CASE_INBREEDING, sample)
    return HweReport(nu1, nu1, 1.0, mle, tilde, CASE_OUTBREEDING, sample)


@dataclass(frozen=True)
class HweFigureRow:
    """One sample's report plus the tangent contour for plotting."""

    report: HweReport
    contour: ContourData


def hwe_figure_data(
    samples, cfg: OptConfig | None = None, grid: int = 201
) -> list[HweFigureRow]:
    """Reports plus the level set at alpha = nu1 in (theta1, theta3)
    coordinates; for an on-curve MLE the contour degenerates to it."""
    cfg = cfg or OptConfig()
    model = TrinomialModel()
    rows = []
    for sample in samples:
        rep = hwe_report(sample, cfg)
        alpha = max(rep.nu1, 1e-300)
        data = contour(model, sample.counts, alpha, grid=grid, cfg=cfg)
        rows.append(HweFigureRow(rep, data))
    return rows
