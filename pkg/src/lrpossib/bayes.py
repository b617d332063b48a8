"""Posterior probabilities and the possibility bounds that cage them.

The central inequality: for any prior, the posterior probability of a
region is at most nu(region) * c(x) * prior(region) ... rearranged here
as  nu(region) >= posterior(region) * m(x) / (prior(region) * c(x)),
where m(x) is the prior predictive density and c(x) the likelihood
supremum over the whole space.  When the prior mass of the region does
not exceed m(x)/c(x), the bound simplifies to posterior <= nu.

Finite spaces are summed exactly in the log domain.  Continuous priors
are integrated by adaptive quadrature in 1-D and refined Simpson rules
in 2-D; regions must reduce to box algebra there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad
from scipy.special import logsumexp

from .errors import ConvergenceError, InputError, UnsupportedError
from .evidence import check_sample_usable, nu
from .model import StatModel
from .optimize import OptConfig, global_sup
from .regions import Complement, Full, Region, decompose, member
from .space import ContinuousSpace, FiniteSpace, Interval

_NORM_TOL = 1e-6
_QUAD_REL = 1e-9


@dataclass(frozen=True)
class FinitePrior:
    """Probability weights over a finite space, index-aligned with it."""

    weights: tuple

    def __init__(self, weights) -> None:
        w = tuple(float(v) for v in weights)
        if not w:
            raise InputError("prior needs at least one weight")
        for v in w:
            if not math.isfinite(v) or v < 0.0:
                raise InputError(f"prior weight {v} must be finite and nonnegative")
        if abs(sum(w) - 1.0) > _NORM_TOL:
            raise InputError(f"prior weights sum to {sum(w)}, not 1")
        object.__setattr__(self, "weights", w)


@dataclass(frozen=True)
class ContinuousPrior:
    """A density on a finite box support, checked to integrate to 1."""

    density: object
    support: tuple

    def __init__(self, density, support) -> None:
        sup = []
        for pair in support:
            if isinstance(pair, Interval):
                iv = pair
            else:
                lo, hi = pair
                iv = Interval(float(lo), float(hi))
            if not iv.bounded:
                raise InputError("prior support must be a bounded box")
            sup.append(iv)
        if len(sup) not in (1, 2):
            raise InputError("continuous priors support 1 or 2 dimensions")
        object.__setattr__(self, "density", density)
        object.__setattr__(self, "support", tuple(sup))
        total = _integrate_box(
            lambda p: self.density(p), self.support, None
        )
        if abs(total - 1.0) > _NORM_TOL:
            raise InputError(f"prior density integrates to {total:.8g}, not 1")


def _simpson_weights(n: int) -> np.ndarray:
    # composite Simpson, n odd
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return w / 3.0


def _integrate_box(f, ivs: tuple, tag: str | None) -> float:
    """Integrate f over a closed box; f takes a coordinate tuple."""
    dims = len(ivs)
    if dims == 1:
        lo, hi = ivs[0].lo, ivs[0].hi
        if hi <= lo:
            return 0.0
        val, err = quad(lambda t: f((t,)), lo, hi, epsabs=0.0, epsrel=_QUAD_REL, limit=200)
        if err > 1e-6 * max(abs(val), 1e-12):
            raise ConvergenceError(
                f"1-D quadrature error {err:.3g} too large for {tag or 'integral'}",
                estimate=val,
            )
        return val
    (a1, b1), (a2, b2) = (ivs[0].lo, ivs[0].hi), (ivs[1].lo, ivs[1].hi)
    if b1 <= a1 or b2 <= a2:
        return 0.0
    prev = None
    for n in (65, 129, 257, 513, 1025):
        xs = np.linspace(a1, b1, n)
        ys = np.linspace(a2, b2, n)
        w = _simpson_weights(n)
        vals = np.empty((n, n))
        for i, t1 in enumerate(xs):
            vals[i] = [f((t1, t2)) for t2 in ys]
        est = float(w @ vals @ w) * (b1 - a1) * (b2 - a2) / ((n - 1) * (n - 1))
        if prev is not None and abs(est - prev) <= 1e-6 * max(abs(est), 1e-12):
            return est
        prev = est
    raise ConvergenceError(
        f"2-D quadrature did not stabilize for {tag or 'integral'}", estimate=prev
    )


@dataclass(frozen=True)
class PosteriorSummary:
    """Posterior mass of a region next to the bound nu must dominate."""

    m_x: float
    c_x: float
    post_prob: float
    prior_prob: float
    bound: float | None
    bound_defined: bool


def _finite_posterior(
    model: StatModel, x, prior: FinitePrior, region: Region
) -> PosteriorSummary:
    space = model.space
    assert isinstance(space, FiniteSpace)
    if len(prior.weights) != len(space.values):
        raise InputError(
            f"prior has {len(prior.weights)} weights for a space of size {len(space.values)}"
        )
    ll = np.array([model.loglik(i, x) for i in range(len(space))])
    logw = np.array(
        [math.log(w) if w > 0.0 else -math.inf for w in prior.weights]
    )
    terms = ll + logw
    log_m = float(logsumexp(terms))
    in_region = np.array([member(region, v) for v in space.values], dtype=bool)
    prior_prob = float(sum(w for w, m in zip(prior.weights, in_region) if m))
    if in_region.any():
        log_num = float(logsumexp(terms[in_region]))
    else:
        log_num = -math.inf
    post = 0.0 if log_num == -math.inf else math.exp(log_num - log_m)
    c_ll = float(ll.max())
    m_x = math.exp(log_m)
    c_x = math.exp(c_ll)
    if prior_prob > 0.0:
        if log_num == -math.inf:
            bound: float | None = 0.0
        else:
            bound = math.exp(log_num - math.log(prior_prob) - c_ll)
        defined = True
    else:
        bound, defined = None, False
    return PosteriorSummary(m_x, c_x, post, prior_prob, bound, defined)


def _region_boxes(region: Region, support: tuple) -> list | None:
    """Closed sub-boxes of the support covering region (up to closure)."""
    space = ContinuousSpace(bounds=support)
    cells = decompose(region, space)
    if cells is None:
        return None
    boxes = []
    for cell in cells:
        boxes.append(tuple(Interval(iv.lo, iv.hi) for iv in cell))
    return boxes


def _continuous_posterior(
    model: StatModel, x, prior: ContinuousPrior, region: Region, cfg: OptConfig
) -> PosteriorSummary:
    space = model.space
    if len(prior.support) != space.dim:
        raise InputError("prior support dimension does not match the parameter space")

    glob = global_sup(model, x, cfg)
    c_ll = glob.sup_loglik

    # integrate on the peak-normalized scale so extreme samples neither
    # underflow to a zero predictive nor overflow the quadrature
    def integrand(p) -> float:
        d = prior.density(p)
        if d <= 0.0:
            return 0.0
        ll = model.loglik(p, x)
        if ll == -math.inf:
            return 0.0
        return d * math.exp(min(0.0, ll - c_ll))

    m_shift = _integrate_box(integrand, prior.support, "m(x)")
    if m_shift <= 0.0:
        w = glob.witness
        peak_in_support = w is not None and all(
            iv.lo <= t <= iv.hi for t, iv in zip(w, prior.support)
        )
        if peak_in_support and prior.density(tuple(w)) > 0.0:
            # the integrand is positive at the likelihood peak, so a zero
            # integral means the grid never resolved the mass
            raise ConvergenceError(
                "quadrature resolved no likelihood mass; the peak is too "
                "narrow for the integration grid"
            )
        raise InputError("prior predictive m(x) is zero; posterior undefined")
    boxes = _region_boxes(region, prior.support)
    if boxes is None:
        raise UnsupportedError(
            "continuous posterior probabilities require regions made of box algebra"
        )
    num_shift = sum(_integrate_box(integrand, b, "numerator") for b in boxes)
    prior_prob = sum(
        _integrate_box(lambda p: max(0.0, float(prior.density(p))), b, "prior mass")
        for b in boxes
    )
    post = min(1.0, num_shift / m_shift)
    prior_prob = min(1.0, prior_prob)
    if prior_prob > 0.0:
        # num / (prior * c_x) with the e^{c_ll} factors cancelled
        bound: float | None = num_shift / prior_prob
        defined = True
    else:
        bound, defined = None, False
    return PosteriorSummary(
        _unshift(m_shift, c_ll), _unshift(1.0, c_ll), post, prior_prob, bound, defined
    )


def _unshift(value: float, c_ll: float) -> float:
    """Return value * e^{c_ll} without tripping float overflow."""
    if value <= 0.0:
        return 0.0
    t = c_ll + math.log(value)
    if t > 700.0:
        return math.inf
    return math.exp(t)


def posterior_prob(
    model: StatModel,
    x,
    prior,
    region: Region,
    cfg: OptConfig | None = None,
) -> PosteriorSummary:
    """Posterior mass of the region, with the ingredients of the bound."""
    cfg = cfg or OptConfig()
    check_sample_usable(model, x)
    if isinstance(prior, FinitePrior):
        if not isinstance(model.space, FiniteSpace):
            raise InputError("finite prior given for a continuous parameter space")
        return _finite_posterior(model, x, prior, region)
    if isinstance(prior, ContinuousPrior):
        if not isinstance(model.space, ContinuousSpace):
            raise InputError("continuous prior given for a finite parameter space")
        return _continuous_posterior(model, x, prior, region, cfg)
    raise InputError(f"unknown prior type {type(prior).__name__}")


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    nu: float
    bound: float
    summary: PosteriorSummary


def lemma2_check(
    model: StatModel,
    x,
    prior,
    region: Region,
    tol: float = 1e-9,
    cfg: OptConfig | None = None,
) -> BoundCheck:
    """Verify nu(region) >= posterior * m(x) / (prior * c(x))."""
    cfg = cfg or OptConfig()
    summary = posterior_prob(model, x, prior, region, cfg)
    if not summary.bound_defined:
        raise InputError("region has zero prior mass; the bound is undefined")
    val = nu(model, x, region, cfg).nu
    return BoundCheck(val >= summary.bound - tol, val, summary.bound, summary)


@dataclass(frozen=True)
class SimpleBoundCheck:
    applicable: bool
    holds: bool | None
    posterior: float
    nu: float
    summary: PosteriorSummary


def corollary1_check(
    model: StatModel,
    x,
    prior,
    region: Region,
    tol: float = 1e-9,
    cfg: OptConfig | None = None,
) -> SimpleBoundCheck:
    """When prior(region) <= m(x)/c(x), check posterior <= nu(region)."""
    cfg = cfg or OptConfig()
    summary = posterior_prob(model, x, prior, region, cfg)
    applicable = summary.prior_prob <= summary.m_x / summary.c_x + 1e-12
    val = nu(model, x, region, cfg).nu
    holds = (summary.post_prob <= val + tol) if applicable else None
    return SimpleBoundCheck(applicable, holds, summary.post_prob, val, summary)


@dataclass(frozen=True)
class ImpreciseSummary:
    """nu as upper probability, its conjugate as lower, and the uniform
    posterior sandwiched between them."""

    upper: float
    lower: float
    uniform_posterior: float


def walley_moral(
    model: StatModel, x, region: Region, cfg: OptConfig | None = None
) -> ImpreciseSummary:
    space = model.space
    if not isinstance(space, FiniteSpace):
        raise UnsupportedError(
            "the upper/lower probability summary is computed on finite spaces"
        )
    cfg = cfg or OptConfig()
    check_sample_usable(model, x)
    upper = nu(model, x, region, cfg).nu
    if isinstance(region, Full):
        lower = 1.0
    else:
        lower = 1.0 - nu(model, x, Complement(region), cfg).nu
    ll = np.array([model.loglik(i, x) for i in range(len(space))])
    in_region = np.array([member(region, v) for v in space.values], dtype=bool)
    log_m = float(logsumexp(ll))
    if in_region.any():
        post = math.exp(float(logsumexp(ll[in_region])) - log_m)
    else:
        post = 0.0
    return ImpreciseSummary(upper, lower, post)
