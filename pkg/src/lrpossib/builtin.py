"""Concrete models: Binomial, Poisson, Normal, Trinomial, a finite-grid
Binomial, and the two discrete counter-example models of Fraser and
Severini, plus exact-arithmetic helpers for the discrete pair.

The continuous models expose closed-form maximizers (global, over boxes,
and for the trinomial over the Hardy-Weinberg region families) so the
supremum engine can answer most queries without iteration; the numeric
path stays available and is what the oracle tests exercise.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .errors import InputError, SpecError
from .model import StatModel
from .regions import Region
from .space import ContinuousSpace, FiniteSpace, Interval

_LOG_THIRD = math.log(1.0 / 3.0)


def _xlogy(a: float, b: float) -> float:
    if a == 0.0:
        return 0.0
    if b <= 0.0:
        return -math.inf
    return a * math.log(b)


def _check_count(x, what: str, lo: int = 0, hi: int | None = None) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise InputError(f"{what} must be an integer, got {x!r}")
    if x < lo or (hi is not None and x > hi):
        rng = f"[{lo}, {hi}]" if hi is not None else f"[{lo}, inf)"
        raise InputError(f"{what}={x} outside {rng}")
    return x


# ---------------------------------------------------------------------------
# Binomial


@dataclass(frozen=True)
class BinomialModel(StatModel):
    """X ~ Binomial(n, theta), theta in the open unit interval."""

    n: int
    name: str = "binomial"

    def __post_init__(self):
        _check_count(self.n, "n", lo=1)
        object.__setattr__(
            self, "space", ContinuousSpace((Interval(0.0, 1.0, True, True),))
        )

    def _logc(self, x: int) -> float:
        return (
            math.lgamma(self.n + 1) - math.lgamma(x + 1) - math.lgamma(self.n - x + 1)
        )

    def check_sample(self, x) -> None:
        _check_count(x, "x", lo=0, hi=self.n)

    def loglik(self, theta, x) -> float:
        (t,) = theta
        if t < 0.0 or t > 1.0:
            return -math.inf
        return _xlogy(x, t) + _xlogy(self.n - x, 1.0 - t) + self._logc(x)

    def batch_loglik(self, thetas: np.ndarray, x) -> np.ndarray:
        return kernels.binom_loglik(thetas[:, 0], float(x), float(self.n), self._logc(x))

    def global_mle(self, x):
        return [(x / self.n,)]

    def box_argmax(self, intervals, x):
        (iv,) = intervals
        return (min(max(x / self.n, iv.lo), iv.hi),)


def binom_nu(theta: float, x: int, n: int) -> float:
    """Pointwise normalized likelihood ratio for the binomial model.

    At x=0 and x=n the global supremum is the boundary value 1, so the
    ratio reduces to the bare likelihood without the binomial factor.
    """
    _check_count(n, "n", lo=1)
    _check_count(x, "x", lo=0, hi=n)
    if not 0.0 < theta < 1.0:
        raise InputError(f"theta={theta} outside (0, 1)")
    if x == 0:
        return (1.0 - theta) ** n
    if x == n:
        return theta**n
    r = x / n
    return math.exp(
        x * math.log(theta / r) + (n - x) * math.log((1.0 - theta) / (1.0 - r))
    )


# ---------------------------------------------------------------------------
# Poisson


@dataclass(frozen=True)
class PoissonModel(StatModel):
    """X ~ Poisson(theta), theta > 0."""

    name: str = "poisson"

    def __post_init__(self):
        object.__setattr__(
            self, "space", ContinuousSpace((Interval(0.0, math.inf, True, True),))
        )

    def check_sample(self, x) -> None:
        _check_count(x, "x", lo=0)

    def loglik(self, theta, x) -> float:
        (t,) = theta
        if t < 0.0:
            return -math.inf
        return -t + _xlogy(x, t) - math.lgamma(x + 1)

    def batch_loglik(self, thetas: np.ndarray, x) -> np.ndarray:
        return kernels.poisson_loglik(thetas[:, 0], float(x), -math.lgamma(x + 1))

    def global_mle(self, x):
        return [(float(x),)]

    def box_argmax(self, intervals, x):
        (iv,) = intervals
        return (min(max(float(x), iv.lo), iv.hi),)


def poisson_nu(theta: float, x: int) -> float:
    """Pointwise lambda for the Poisson model; exp(x - theta) (theta/x)^x."""
    _check_count(x, "x", lo=0)
    if not theta > 0.0:
        raise InputError(f"theta={theta} must be positive")
    if x == 0:
        return math.exp(-theta)
    return math.exp(x - theta + x * math.log(theta / x))


# ---------------------------------------------------------------------------
# Normal with both parameters unknown


@dataclass(frozen=True)
class NormalStats:
    """Sufficient statistics: sample mean, ML variance (denominator n), n."""

    mean: float
    var: float
    n: int

    def __post_init__(self):
        if not math.isfinite(self.mean):
            raise InputError("mean must be finite")
        if not (math.isfinite(self.var) and self.var >= 0):
            raise InputError("var must be finite and nonnegative")
        _check_count(self.n, "n", lo=1)

    @classmethod
    def from_data(cls, values) -> "NormalStats":
        v = np.asarray(list(values), dtype=float)
        if v.size < 2:
            raise InputError("need at least two observations")
        m = float(np.mean(v))
        return cls(m, float(np.mean((v - m) ** 2)), int(v.size))


@dataclass(frozen=True)
class NormalModel(StatModel):
    """Normal with unknown (mu, sigma2); samples enter as NormalStats."""

    name: str = "normal"

    def __post_init__(self):
        object.__setattr__(
            self,
            "space",
            ContinuousSpace(
                (Interval(-math.inf, math.inf, True, True), Interval(0.0, math.inf, True, True))
            ),
        )

    def check_sample(self, x) -> None:
        if not isinstance(x, NormalStats):
            raise InputError(f"normal sample must be NormalStats, got {type(x).__name__}")

    def loglik(self, theta, x: NormalStats) -> float:
        mu, s2 = theta
        if s2 <= 0.0:
            return -math.inf
        return -0.5 * x.n * math.log(2.0 * math.pi * s2) - x.n * (
            x.var + (mu - x.mean) * (mu - x.mean)
        ) / (2.0 * s2)

    def batch_loglik(self, thetas: np.ndarray, x: NormalStats) -> np.ndarray:
        return kernels.normal_loglik(
            thetas[:, 0], thetas[:, 1], x.mean, x.var, float(x.n)
        )

    def global_mle(self, x: NormalStats):
        # var 0 makes the supremum diverge along sigma2 -> 0, unattained
        return [(x.mean, x.var)] if x.var > 0.0 else None

    def sup_hint(self, x: NormalStats):
        return math.inf if x.var == 0.0 else None

    def box_argmax(self, intervals, x: NormalStats):
        # profile argument: for fixed mu the optimal variance is
        # var + (mean-mu)^2, and the profile is unimodal in mu around mean
        ivm, ivv = intervals
        mu = min(max(x.mean, ivm.lo), ivm.hi)
        v_eff = x.var + (x.mean - mu) * (x.mean - mu)
        s2 = min(max(v_eff, ivv.lo), ivv.hi)
        return (mu, s2)


def normal_nu(mu: float, sigma2: float, m_x: float, s2_x: float, n: int) -> float:
    """Pointwise lambda = (s2_x/sigma2)^(n/2) exp(-(n/(2 sigma2))(s2_x+(m_x-mu)^2) + n/2)."""
    _check_count(n, "n", lo=1)
    if not sigma2 > 0.0:
        raise InputError(f"sigma2={sigma2} must be positive")
    if not s2_x > 0.0:
        raise InputError(f"s2_x={s2_x} must be positive")
    return math.exp(
        0.5 * n * math.log(s2_x / sigma2)
        - n * (s2_x + (m_x - mu) * (m_x - mu)) / (2.0 * sigma2)
        + 0.5 * n
    )


# ---------------------------------------------------------------------------
# Trinomial (free coordinates theta1, theta3; theta2 = 1 - theta1 - theta3)

_SIMPLEX_TOL = 1e-12


def _simplex_ok(p) -> bool:
    return (
        p[0] >= -_SIMPLEX_TOL
        and p[1] >= -_SIMPLEX_TOL
        and p[0] + p[1] <= 1.0 + _SIMPLEX_TOL
    )


def _check_counts3(y) -> tuple[int, int, int]:
    if not isinstance(y, (tuple, list)) or len(y) != 3:
        raise InputError(f"trinomial sample must be three counts, got {y!r}")
    y1, y2, y3 = (_check_count(v, f"y{i+1}", lo=0) for i, v in enumerate(y))
    if y1 + y2 + y3 < 1:
        raise InputError("total count m must be at least 1")
    return y1, y2, y3


def trinom_tilde(y1: int, y2: int, y3: int) -> tuple[float, float]:
    """Maximizer of the likelihood along the one-parameter curve
    theta = (p^2, 2p(1-p), (1-p)^2): p = (m + y1 - y3) / (2m)."""
    m = y1 + y2 + y3
    p = (m + y1 - y3) / (2.0 * m)
    return (p * p, (1.0 - p) * (1.0 - p))


def trinom_side(y1: int, y2: int, y3: int) -> int:
    """Sign of sqrt(mle3) - (1 - sqrt(mle1)) via the exact integer
    comparison 4*y1*y3 vs y2^2: negative means the MLE sits where
    heterozygotes exceed their equilibrium share."""
    d = 4 * y1 * y3 - y2 * y2
    return (d > 0) - (d < 0)


@dataclass(frozen=True)
class TrinomialModel(StatModel):
    """Counts (y1,y2,y3) ~ Multinomial(m; theta1, theta2, theta3)."""

    name: str = "trinomial"

    def __post_init__(self):
        object.__setattr__(
            self,
            "space",
            ContinuousSpace(
                (Interval(0.0, 1.0), Interval(0.0, 1.0)), feasible=_simplex_ok
            ),
        )

    def check_sample(self, x) -> None:
        _check_counts3(x)

    def _logc(self, y) -> float:
        y1, y2, y3 = y
        return (
            math.lgamma(y1 + y2 + y3 + 1)
            - math.lgamma(y1 + 1)
            - math.lgamma(y2 + 1)
            - math.lgamma(y3 + 1)
        )

    def loglik(self, theta, x) -> float:
        t1, t3 = theta
        t2 = 1.0 - t1 - t3
        if t1 < -_SIMPLEX_TOL or t3 < -_SIMPLEX_TOL or t2 < -_SIMPLEX_TOL:
            return -math.inf
        y1, y2, y3 = x
        return (
            _xlogy(y1, max(t1, 0.0))
            + _xlogy(y2, max(t2, 0.0))
            + _xlogy(y3, max(t3, 0.0))
            + self._logc(x)
        )

    def batch_loglik(self, thetas: np.ndarray, x) -> np.ndarray:
        y1, y2, y3 = x
        return kernels.trinom_loglik(
            thetas[:, 0], thetas[:, 1], float(y1), float(y2), float(y3), self._logc(x)
        )

    def global_mle(self, x):
        y1, y2, y3 = x
        m = y1 + y2 + y3
        return [(y1 / m, y3 / m)]

    def region_argmax(self, region: Region, x):
        fam = region.family
        if fam not in ("hwe-curve", "hwe-inbreeding", "hwe-outbreeding"):
            return None
        y1, y2, y3 = x
        side = trinom_side(y1, y2, y3)
        tilde = trinom_tilde(y1, y2, y3)
        if fam == "hwe-curve":
            return tilde
        # log-likelihood is concave on the simplex, so when the MLE lies
        # strictly on the other side the restricted sup sits on the curve
        mle = self.global_mle(x)[0]
        if fam == "hwe-inbreeding":
            return mle if side <= 0 else tilde
        return mle if side >= 0 else tilde


# ---------------------------------------------------------------------------
# Binomial restricted to a finite parameter grid


@dataclass(frozen=True)
class BinomialFiniteModel(StatModel):
    """Binomial(n, theta) with theta confined to an explicit finite grid."""

    n: int
    thetas: tuple[float, ...]
    name: str = "binomial-finite"

    def __post_init__(self):
        _check_count(self.n, "n", lo=1)
        ths = tuple(float(t) for t in self.thetas)
        if not ths:
            raise InputError("need at least one theta")
        for t in ths:
            if not 0.0 < t < 1.0:
                raise InputError(f"theta={t} outside (0, 1)")
        object.__setattr__(self, "thetas", ths)
        object.__setattr__(
            self, "space", FiniteSpace(tuple(repr(t) for t in ths), ths)
        )

    def check_sample(self, x) -> None:
        _check_count(x, "x", lo=0, hi=self.n)

    def loglik(self, theta, x) -> float:
        i = self.space.check_point(theta)
        t = self.thetas[i]
        logc = (
            math.lgamma(self.n + 1) - math.lgamma(x + 1) - math.lgamma(self.n - x + 1)
        )
        return _xlogy(x, t) + _xlogy(self.n - x, 1.0 - t) + logc


# ---------------------------------------------------------------------------
# Fraser's discrete counter-example


def fraser_support(theta: int) -> tuple[int, int, int]:
    return (theta // 2, 2 * theta, 2 * theta + 1)


def fraser_lik(theta: int, x: int) -> Fraction:
    """Exact P_theta(X = x): 1/3 on the three support points."""
    _check_count(theta, "theta", lo=1)
    _check_count(x, "x", lo=0)
    return Fraction(1, 3) if x in fraser_support(theta) else Fraction(0)


def fraser_nu_exact(theta: int, x: int) -> Fraction:
    """nu_x({theta}) in exact arithmetic: all positive likelihoods tie at
    1/3, so the value is 1 where the likelihood is positive, else 0."""
    return Fraction(1) if fraser_lik(theta, x) > 0 else Fraction(0)


def fraser_coverage(theta: int) -> Fraction:
    """P_theta(floor(X/2) = theta) by exact enumeration; 2/3 for every theta."""
    _check_count(theta, "theta", lo=1)
    return sum(
        (Fraction(1, 3) for x in fraser_support(theta) if x // 2 == theta),
        Fraction(0),
    )


@dataclass(frozen=True)
class FraserModel(StatModel):
    """Uniform 1/3 mass on {floor(theta/2), 2 theta, 2 theta + 1}."""

    theta_max: int
    name: str = "fraser"

    def __post_init__(self):
        _check_count(self.theta_max, "theta_max", lo=1)
        values = tuple(range(1, self.theta_max + 1))
        object.__setattr__(
            self, "space", FiniteSpace(tuple(str(t) for t in values), values)
        )

    @classmethod
    def for_sample(cls, x: int, factor: int = 10) -> "FraserModel":
        """Default cap 10x+1 covers every positive-likelihood theta."""
        return cls(max(1, factor * x + 1))

    def check_sample(self, x) -> None:
        _check_count(x, "x", lo=0)

    def loglik(self, theta, x) -> float:
        i = self.space.check_point(theta)
        return _LOG_THIRD if x in fraser_support(self.space.values[i]) else -math.inf


# ---------------------------------------------------------------------------
# Severini's discrete counter-example


def severini_pmf(theta: int) -> dict[int, Fraction]:
    """Exact P_theta over its three-point support."""
    _check_count(theta, "theta", lo=1)
    if theta == 1 or theta % 2 == 0:
        third = Fraction(1, 3)
        return {(theta + 1) // 2: third, 2 * theta: third, 2 * theta + 1: third}
    return {
        (theta - 1) // 2: Fraction(10, 24),
        2 * theta: Fraction(7, 24),
        2 * theta + 1: Fraction(7, 24),
    }


def severini_lik(theta: int, x: int) -> Fraction:
    _check_count(x, "x", lo=1)
    return severini_pmf(theta).get(x, Fraction(0))


def severini_nu_exact(theta: int, x: int) -> Fraction:
    """nu_x({theta}) in exact arithmetic.  The supremum over theta is
    10/24 at theta = 2x+1, so positive values land in {7/10, 8/10, 1}."""
    num = severini_lik(theta, x)
    if num == 0:
        return Fraction(0)
    den = max(severini_lik(t, x) for t in range(1, 2 * x + 2))
    return num / den


def severini_T(x: int) -> int:
    """The estimator whose coverage dominates 2x+1: (x-1)/2 for odd x>1,
    otherwise ceil(x/2)."""
    _check_count(x, "x", lo=1)
    if x > 1 and x % 2 == 1:
        return (x - 1) // 2
    return (x + 1) // 2


def severini_coverage(theta: int, stat: str) -> Fraction:
    """Exact P_theta(stat(X) = theta) for stat 'T' or '2x+1'."""
    if stat == "T":
        fn = severini_T
    elif stat == "2x+1":
        fn = lambda x: 2 * x + 1  # noqa: E731
    else:
        raise InputError(f"stat must be 'T' or '2x+1', got {stat!r}")
    return sum(
        (p for x, p in severini_pmf(theta).items() if x >= 1 and fn(x) == theta),
        Fraction(0),
    )


@dataclass(frozen=True)
class SeveriniModel(StatModel):
    """Fraser's construction reweighted so theta = 2x+1 has the strictly
    highest likelihood at every sample."""

    theta_max: int
    name: str = "severini"

    def __post_init__(self):
        _check_count(self.theta_max, "theta_max", lo=1)
        values = tuple(range(1, self.theta_max + 1))
        object.__setattr__(
            self, "space", FiniteSpace(tuple(str(t) for t in values), values)
        )

    @classmethod
    def for_sample(cls, x: int, factor: int = 10) -> "SeveriniModel":
        return cls(max(1, factor * x + 1))

    def check_sample(self, x) -> None:
        _check_count(x, "x", lo=1)

    def loglik(self, theta, x) -> float:
        i = self.space.check_point(theta)
        p = severini_pmf(self.space.values[i]).get(x)
        return math.log(float(p)) if p else -math.inf


# ---------------------------------------------------------------------------
# registry used by the CLI


def make_model(name: str, params: dict | None, sample=None) -> StatModel:
    """Build a model by registry name; `sample` supplies the default
    theta cap for the discrete counter-example models."""
    params = dict(params or {})

    def take(key, default=None, required=False):
        if required and key not in params:
            raise SpecError(f"$.model.params: missing field '{key}' for {name!r}")
        return params.pop(key, default)

    if name == "binomial":
        model = BinomialModel(take("n", required=True))
    elif name == "poisson":
        model = PoissonModel()
    elif name == "normal":
        model = NormalModel()
    elif name == "trinomial":
        model = TrinomialModel()
    elif name == "binomial-finite":
        model = BinomialFiniteModel(
            take("n", required=True), tuple(take("thetas", required=True))
        )
    elif name in ("fraser", "severini"):
        cls = FraserModel if name == "fraser" else SeveriniModel
        cap = take("theta_max")
        if cap is None:
            if not isinstance(sample, int):
                raise SpecError(
                    f"$.model.params: theta_max required for {name!r} without an integer sample"
                )
            model = cls.for_sample(sample)
        else:
            model = cls(cap)
    else:
        raise SpecError(f"$.model.name: unknown model {name!r}")
    if params:
        raise SpecError(
            f"$.model.params: unknown field(s) {sorted(params)} for {name!r}"
        )
    return model
