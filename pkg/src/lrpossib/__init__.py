"""Likelihood-ratio possibility measures over statistical parameter
regions: evidence values, verdicts, level-set contours, posterior
bounds, exact discrete counter-example models, and the Hardy-Weinberg
application."""

from .bayes import (
    BoundCheck,
    ContinuousPrior,
    FinitePrior,
    ImpreciseSummary,
    PosteriorSummary,
    SimpleBoundCheck,
    corollary1_check,
    lemma2_check,
    posterior_prob,
    walley_moral,
)
from .builtin import (
    BinomialFiniteModel,
    BinomialModel,
    FraserModel,
    NormalModel,
    NormalStats,
    PoissonModel,
    SeveriniModel,
    TrinomialModel,
    binom_nu,
    fraser_coverage,
    fraser_lik,
    fraser_nu_exact,
    fraser_support,
    make_model,
    normal_nu,
    poisson_nu,
    severini_T,
    severini_coverage,
    severini_lik,
    severini_nu_exact,
    trinom_side,
    trinom_tilde,
)
from .contour import ContourData, contour
from .errors import (
    ConvergenceError,
    InputError,
    LrPossibError,
    SpecError,
    UnsupportedError,
    XStarError,
)
from .evidence import (
    EvidenceValue,
    LikelihoodRatio,
    PhiVerdict,
    lambda_level_set_membership,
    likelihood_ratio_R,
    nu,
    phi,
)
from .hwe import (
    CASE_INBREEDING,
    CASE_ON_CURVE,
    CASE_OUTBREEDING,
    HweReport,
    HweSample,
    hwe_curve_sup,
    hwe_figure_data,
    hwe_regions,
    hwe_report,
    hwe_side,
)
from .kernels import BACKEND
from .model import LOGLIK_CAP, SampleStatus, StatModel, TableModel, validate_sample
from .optimize import OptConfig, SupResult, global_sup, mle_set, restricted_sup
from .regions import (
    Box,
    Complement,
    Constraint,
    Empty,
    FiniteSet,
    Full,
    Intersection,
    Predicate,
    Region,
    Union,
    box,
    decompose,
    from_json,
    interval,
    member,
    member_batch,
    to_json,
    violation,
)
from .space import ContinuousSpace, FiniteSpace, Interval, closed_box

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BinomialFiniteModel",
    "BinomialModel",
    "BoundCheck",
    "Box",
    "Complement",
    "Constraint",
    "ContinuousPrior",
    "ContinuousSpace",
    "ContourData",
    "ConvergenceError",
    "Empty",
    "EvidenceValue",
    "FiniteSet",
    "FinitePrior",
    "FiniteSpace",
    "FraserModel",
    "Full",
    "CASE_INBREEDING",
    "CASE_ON_CURVE",
    "CASE_OUTBREEDING",
    "HweReport",
    "HweSample",
    "ImpreciseSummary",
    "InputError",
    "Intersection",
    "Interval",
    "LOGLIK_CAP",
    "LikelihoodRatio",
    "LrPossibError",
    "NormalModel",
    "NormalStats",
    "OptConfig",
    "PhiVerdict",
    "PoissonModel",
    "PosteriorSummary",
    "Predicate",
    "Region",
    "SampleStatus",
    "SeveriniModel",
    "SimpleBoundCheck",
    "SpecError",
    "StatModel",
    "SupResult",
    "TableModel",
    "TrinomialModel",
    "Union",
    "UnsupportedError",
    "XStarError",
    "binom_nu",
    "box",
    "closed_box",
    "contour",
    "corollary1_check",
    "decompose",
    "fraser_coverage",
    "fraser_lik",
    "fraser_nu_exact",
    "fraser_support",
    "from_json",
    "global_sup",
    "hwe_curve_sup",
    "hwe_figure_data",
    "hwe_regions",
    "hwe_report",
    "hwe_side",
    "interval",
    "lambda_level_set_membership",
    "lemma2_check",
    "likelihood_ratio_R",
    "make_model",
    "member",
    "member_batch",
    "mle_set",
    "normal_nu",
    "nu",
    "phi",
    "poisson_nu",
    "posterior_prob",
    "restricted_sup",
    "severini_T",
    "severini_coverage",
    "severini_lik",
    "severini_nu_exact",
    "to_json",
    "trinom_side",
    "trinom_tilde",
    "validate_sample",
    "violation",
    "walley_moral",
]
