"""Evidence values over parameter regions and the verdict logic built
on them.

The central quantity is nu(region) = exp(sup loglik over the region
minus the global sup), clamped to [0,1].  A pair of such values for a
hypothesis and its complement yields an accept / reject / maintain
verdict under configurable thresholds; sharp hypotheses (regions of
lower dimension than the space) restrict which verdicts are reachable,
and the Fisherian stance disables acceptance outright.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InputError, XStarError
from .model import SampleStatus, StatModel, validate_sample
from .optimize import OptConfig, SupResult, global_sup, restricted_sup
from .regions import Complement, Empty, Full, Region
from .space import ContinuousSpace

ONE_TOL = 1e-6  # operationalizes the exact "= 1", unreachable in floats on continuous spaces
_C2_TOL = 1e-3

REGIMES = ("both_nonsharp", "sharp_null", "sharp_alternative")
PHILOSOPHIES = ("fisherian", "neyman_pearson")

ANNOTATION_CONSISTENT = "consistent"
ANNOTATION_DEGREE = "inconsistent_degree"
ANNOTATION_IMPOSSIBLE = "impossible"


@dataclass(frozen=True)
class EvidenceValue:
    """nu plus provenance for one region.

    annotation is "consistent" (nu at 1 within tolerance: the region
    holds a parameter the data cannot rank below the best), a plain
    "inconsistent_degree" otherwise, or "impossible" at exactly 0.
    """

    nu: float
    witness: object | None
    sup: SupResult
    glob: SupResult
    annotation: str


def check_sample_usable(model: StatModel, x) -> None:
    """Raise the typed error for samples the measure is undefined on."""
    status = validate_sample(model, x)
    if status is SampleStatus.NOT_IN_XSTAR:
        raise XStarError(
            "sample has no finite likelihood supremum; evidence values are undefined"
        )
    if status is SampleStatus.C1_VIOLATED:
        raise InputError(
            "likelihood is identically zero at this sample (condition C1 fails)"
        )


def nu(model: StatModel, x, region: Region, cfg: OptConfig | None = None) -> EvidenceValue:
    """Likelihood-ratio possibility of `region` given the sample."""
    cfg = cfg or OptConfig()
    check_sample_usable(model, x)
    glob = global_sup(model, x, cfg)
    if isinstance(region, Full):
        sup = glob
    else:
        sup = restricted_sup(model, x, region, cfg)
    if sup.sup_loglik == -math.inf:
        val = 0.0
    else:
        val = math.exp(min(0.0, sup.sup_loglik - glob.sup_loglik))
    if val == 0.0:
        annotation = ANNOTATION_IMPOSSIBLE
    elif val >= 1.0 - ONE_TOL:
        annotation = ANNOTATION_CONSISTENT
    else:
        annotation = ANNOTATION_DEGREE
    return EvidenceValue(val, sup.witness, sup, glob, annotation)


def lambda_level_set_membership(
    model: StatModel, x, theta, alpha: float, cfg: OptConfig | None = None
) -> bool:
    """Is lambda(theta, x) >= alpha?  alpha=0 holds vacuously."""
    if not 0.0 <= alpha <= 1.0:
        raise InputError(f"alpha={alpha} outside [0, 1]")
    cfg = cfg or OptConfig()
    check_sample_usable(model, x)
    if alpha == 0.0:
        return True
    glob = global_sup(model, x, cfg)
    space = model.space
    if isinstance(space, ContinuousSpace):
        if not isinstance(theta, tuple):
            theta = (theta,) if isinstance(theta, (int, float)) else tuple(theta)
        point = space.check_point(theta)
    else:
        # finite spaces are addressed by parameter value, same as regions
        try:
            point = space.values.index(theta)
        except ValueError:
            raise InputError(f"{theta!r} is not a parameter value of this model") from None
    # 1e-12 log slack keeps boundary points in under float rounding
    return model.loglik(point, x) - glob.sup_loglik >= math.log(alpha) - 1e-12


@dataclass(frozen=True)
class LikelihoodRatio:
    """nu(R1)/nu(R2); `defined` is False when the denominator vanishes."""

    nu1: float
    nu2: float
    value: float | None
    defined: bool


def likelihood_ratio_R(
    model: StatModel, x, region1: Region, region2: Region, cfg: OptConfig | None = None
) -> LikelihoodRatio:
    cfg = cfg or OptConfig()
    e1 = nu(model, x, region1, cfg)
    e2 = nu(model, x, region2, cfg)
    if e2.nu == 0.0:
        return LikelihoodRatio(e1.nu, e2.nu, None, False)
    return LikelihoodRatio(e1.nu, e2.nu, e1.nu / e2.nu, True)


@dataclass(frozen=True)
class PhiVerdict:
    """The pair <nu(H0), nu(H0 complement)> plus the decision taken."""

    nu0: float
    nu0c: float
    regime: str
    decision: str
    a_star: float
    b_star: float
    philosophy: str
    ev0: EvidenceValue
    ev0c: EvidenceValue


def _derive_regime(region: Region, space) -> str:
    if region.dim is None or not isinstance(space, ContinuousSpace):
        return "both_nonsharp"
    if region.dim < space.dim:
        return "sharp_null"
    return "both_nonsharp"


def phi(
    model: StatModel,
    x,
    region: Region,
    a_star: float = 0.01,
    b_star: float = 0.01,
    philosophy: str = "neyman_pearson",
    regime: str | None = None,
    cfg: OptConfig | None = None,
) -> PhiVerdict:
    """Accept / reject / maintain H0: theta in region.

    Rules: reject iff nu0 <= a_star and nu0c is 1 (within tolerance);
    accept iff nu0 is 1 and nu0c <= b_star; otherwise maintain.  A
    declared sharp regime whose forced side does not compute to 1 within
    1e-3 is rejected as inconsistent, citing the no-gap condition (C2).
    """
    if not 0.0 < a_star < 1.0 or not 0.0 < b_star < 1.0:
        raise InputError("a_star and b_star must lie in (0, 1)")
    if philosophy not in PHILOSOPHIES:
        raise InputError(f"philosophy must be one of {PHILOSOPHIES}")
    if regime is not None and regime not in REGIMES:
        raise InputError(f"regime must be one of {REGIMES}")
    cfg = cfg or OptConfig()
    if regime is None:
        regime = _derive_regime(region, model.space)
    ev0 = nu(model, x, region, cfg)
    comp = Full() if isinstance(region, Empty) else Complement(region)
    ev0c = nu(model, x, comp, cfg)
    if regime == "sharp_null" and ev0c.nu < 1.0 - _C2_TOL:
        raise InputError(
            "regime declared sharp_null but nu(complement) is "
            f"{ev0c.nu:.6g}; condition (C2) requires the complement of a "
            "measure-zero null to carry possibility 1"
        )
    if regime == "sharp_alternative" and ev0.nu < 1.0 - _C2_TOL:
        raise InputError(
            "regime declared sharp_alternative but nu(H0) is "
            f"{ev0.nu:.6g}; condition (C2) requires the complement of a "
            "measure-zero alternative to carry possibility 1"
        )
    reject_ok = ev0.nu <= a_star and ev0c.nu >= 1.0 - ONE_TOL
    accept_ok = ev0.nu >= 1.0 - ONE_TOL and ev0c.nu <= b_star
    if philosophy == "fisherian":
        accept_ok = False
    if regime == "sharp_null":
        accept_ok = False
    if regime == "sharp_alternative":
        reject_ok = False
    decision = "reject" if reject_ok else ("accept" if accept_ok else "maintain")
    return PhiVerdict(
        ev0.nu, ev0c.nu, regime, decision, a_star, b_star, philosophy, ev0, ev0c
    )
