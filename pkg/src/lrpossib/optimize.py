"""Restricted suprema of the log-likelihood over region trees.

Dispatch order, each step falling through when it does not apply:

1. finite parameter spaces and explicit point sets: exact enumeration;
2. closed forms declared by the model (global MLE, tagged region
   families, per-box maximizers), unless the config disables them so
   tests can exercise the numeric engine;
3. box-algebra region trees: exact decomposition into atomic closed
   cells, each solved by closed form, golden section (1-D) or refined
   grid plus Nelder-Mead (2-D);
4. everything else: membership-masked grids over an effective bounding
   box, golden section per feasible run in 1-D, penalized simplex
   polish in 2-D, with a final witness feasibility repair.

Suprema are taken over region closures.  Unbounded axes are bracketed by
a geometric monotonicity probe (stop after three consecutive decreases);
a log-likelihood exceeding LOGLIK_CAP instead raises XStarError.  The
masked path searches only this envelope, so a general constraint region
living entirely outside it is reported as infeasible; box-algebra trees
do not have this limitation because every cell is solved on its own.

Determinism: identical inputs and seed give identical results.  Grid
batches may be chunked across threads (LRPOSSIB_THREADS or the config),
but chunk boundaries and the post-reduction tie-break (smallest
lexicographic witness among exact ties) do not depend on thread count.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from . import kernels
from .errors import ConvergenceError, InputError, UnsupportedError, XStarError
from .model import LOGLIK_CAP, StatModel
from .regions import (
    Box,
    Complement,
    Constraint,
    Empty,
    FiniteSet,
    Full,
    Intersection,
    Region,
    Union,
    _eval_g_batch,
    decompose,
    member,
    member_batch,
    violation,
)
from .space import ContinuousSpace, FiniteSpace, Interval

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_PENALTY = 1e6


@dataclass(frozen=True)
class SupResult:
    """Outcome of a supremum query.

    `no_feasible` marks the distinguished "no feasible point probed"
    case; sup_loglik is then -inf and witness is None.
    """

    sup_loglik: float
    witness: object | None
    method: str
    evaluations: int
    converged: bool
    no_feasible: bool = False


@dataclass(frozen=True)
class OptConfig:
    """Engine knobs.  grid_base=None means 512 points in 1-D and 96 per
    axis in 2-D.  threads=None defers to LRPOSSIB_THREADS (default 1).
    use_closed_form=False forces the numeric paths; oracle tests use it."""

    rel_tol: float = 1e-8
    grid_base: int | None = None
    refine_rounds: int = 4
    multistarts: int = 16
    seed: int = 0
    threads: int | None = None
    use_closed_form: bool = True

    def __post_init__(self):
        if self.rel_tol <= 0:
            raise InputError("rel_tol must be positive")
        if self.grid_base is not None and self.grid_base < 8:
            raise InputError("grid_base must be at least 8")
        if self.refine_rounds < 1 or self.multistarts < 1:
            raise InputError("refine_rounds and multistarts must be positive")

    def grid_for(self, dim: int) -> int:
        if self.grid_base is not None:
            return self.grid_base
        return 512 if dim == 1 else 96

    def thread_count(self) -> int:
        if self.threads is not None:
            return max(1, self.threads)
        try:
            return max(1, int(os.environ.get("LRPOSSIB_THREADS", "1")))
        except ValueError:
            return 1


def _batch_ll(model: StatModel, x, pts: np.ndarray, cfg: OptConfig) -> np.ndarray:
    n = cfg.thread_count()
    if n <= 1 or pts.shape[0] < 4096:
        return model.batch_loglik(pts, x)
    chunks = np.array_split(pts, n)
    with ThreadPoolExecutor(max_workers=n) as pool:
        parts = list(pool.map(lambda c: model.batch_loglik(c, x), chunks))
    return np.concatenate(parts)


def _guard_cap(value: float) -> float:
    if value > LOGLIK_CAP:
        raise XStarError(
            "log-likelihood exceeds the finite-supremum cap; the sample has no "
            "finite maximum over this model"
        )
    return value


# ---------------------------------------------------------------------------
# exact paths


def _enumerate_sup(model: StatModel, x, region: Region) -> SupResult:
    # membership is decided on the mathematical parameter value; the
    # model itself is addressed by index
    space = model.space
    best = -math.inf
    best_i = None
    probed = 0
    for i in range(len(space)):
        if not member(region, space.values[i], "as_is"):
            continue
        probed += 1
        v = model.loglik(i, x)
        if v > best:
            best, best_i = v, i
    if probed == 0:
        return SupResult(-math.inf, None, "enumeration", 0, True, True)
    _guard_cap(best)
    witness = space.values[best_i] if best_i is not None and best > -math.inf else None
    return SupResult(best, witness, "enumeration", probed, True)


def _point_set_sup(model: StatModel, x, region: FiniteSet, space) -> SupResult:
    pts = sorted(
        p
        for p in region.points
        if isinstance(p, tuple) and len(p) == space.dim and space.contains(p, closure=True)
    )
    if not pts:
        return SupResult(-math.inf, None, "enumeration", 0, True, True)
    best = -math.inf
    best_p = None
    for p in pts:  # ascending order makes the first strict max the lex-smallest
        v = model.loglik(p, x)
        if v > best:
            best, best_p = v, p
    _guard_cap(best)
    if best == -math.inf:
        best_p = None
    return SupResult(best, best_p, "enumeration", len(pts), True)


# ---------------------------------------------------------------------------
# 1-D machinery


def _expand_edge(f, anchor: float, f_anchor: float, direction: float):
    """Geometric probe away from `anchor`; returns (edge, extra_evals).
    Stops after 3 consecutive decreases; diverging loglik raises."""
    step = max(1.0, 0.25 * abs(anchor))
    prev = f_anchor
    t = anchor
    decreases = 0
    evals = 0
    for _ in range(200):
        t = anchor + direction * step
        v = f(t)
        evals += 1
        _guard_cap(v)
        if v < prev:
            decreases += 1
            if decreases >= 3:
                return t, evals
        else:
            decreases = 0
        prev = v
        step *= 2.0
    raise ConvergenceError("monotonicity probe found no decreasing tail")


def _effective_interval(f, iv: Interval, anchor: float):
    """Finite search interval covering the maximum of f over iv."""
    lo, hi = iv.lo, iv.hi
    evals = 0
    if math.isinf(lo) or math.isinf(hi):
        a = anchor
        if math.isfinite(lo):
            a = max(a, lo)
        if math.isfinite(hi):
            a = min(a, hi)
        if not math.isfinite(a):
            a = 0.0
        fa = f(a)
        evals += 1
        if math.isinf(lo):
            lo, e = _expand_edge(f, a, fa, -1.0)
            evals += e
        if math.isinf(hi):
            hi, e = _expand_edge(f, a, fa, +1.0)
            evals += e
    return lo, hi, evals


def _golden(f, a: float, b: float, max_iter: int = 300):
    """Golden-section maximization on [a, b]; tracks the best point seen
    including both endpoints.  Returns (t, value, evals, converged)."""
    tol = max(1e-12, 1e-12 * (abs(a) + abs(b)))
    fa, fb = f(a), f(b)
    evals = 2
    best_t, best_v = (a, fa) if fa >= fb else (b, fb)
    if b - a <= tol:
        return best_t, best_v, evals, True
    c = b - _INVPHI * (b - a)
    d = a + _INVPHI * (b - a)
    fc, fd = f(c), f(d)
    evals += 2
    converged = False
    for _ in range(max_iter):
        if fc >= fd:
            b, fb = d, fd
            d, fd = c, fc
            c = b - _INVPHI * (b - a)
            fc = f(c)
        else:
            a, fa = c, fc
            c, fc = d, fd
            d = a + _INVPHI * (b - a)
            fd = f(d)
        evals += 1
        if b - a <= tol:
            converged = True
            break
    for t, v in ((a, fa), (c, fc), (d, fd), (b, fb)):
        if v > best_v or (v == best_v and t < best_t):
            best_t, best_v = t, v
    return best_t, best_v, evals, converged


def _solve_interval_1d(model: StatModel, x, iv: Interval, cfg: OptConfig, anchor: float):
    """Sup over one closed (possibly unbounded) interval, no masking."""

    def f(t):
        return model.loglik((t,), x)

    if iv.degenerate:
        return iv.lo, f(iv.lo), 1, True
    lo, hi, evals = _effective_interval(f, iv, anchor)
    # coarse seed catches multimodality; golden then refines the bracket
    ts = np.linspace(lo, hi, 65)
    vals = _batch_ll(model, x, ts[:, None], cfg)
    evals += len(ts)
    k = int(np.argmax(vals))
    a = ts[max(0, k - 1)]
    b = ts[min(len(ts) - 1, k + 1)]
    t, v, e, conv = _golden(f, a, b)
    evals += e
    if vals[k] > v or (vals[k] == v and ts[k] < t):
        t, v = float(ts[k]), float(vals[k])
    return t, v, evals, conv


def _mle_anchor(model: StatModel, x, axis: int, cfg: OptConfig) -> float:
    mles = model.global_mle(x)
    if mles:
        return float(mles[0][axis])
    return 0.0


# ---------------------------------------------------------------------------
# 2-D machinery


def _axis_lines(lo: float, hi: float, n: int) -> np.ndarray:
    if hi <= lo:
        return np.array([lo])
    return np.linspace(lo, hi, n)


def _grid_points(box: list, n: int) -> np.ndarray:
    axes = [_axis_lines(lo, hi, n) for lo, hi in box]
    gg = np.meshgrid(*axes, indexing="ij")
    return np.column_stack([g.ravel() for g in gg])


def _top_cells(pts: np.ndarray, vals: np.ndarray, k: int, min_sep: float) -> list:
    order = np.argsort(-vals)
    picked = []
    for idx in order:
        if not math.isfinite(vals[idx]):
            break
        p = pts[idx]
        if all(np.max(np.abs(p - q)) > min_sep for q in picked):
            picked.append(p)
            if len(picked) >= k:
                break
    return picked


def _solve_box_2d(model: StatModel, x, eff_box: list, cfg: OptConfig,
                  feas_batch, feas_scalar, penalty_region: Region | None):
    """Masked grid refinement plus Nelder-Mead polish inside eff_box.

    feas_batch/feas_scalar implement region membership (closure); for
    plain boxes they are None and every grid point is feasible.  Returns
    None when no feasible point was found.
    """
    n = cfg.grid_for(2)
    evals = 0
    box = [list(b) for b in eff_box]
    spans = [b[1] - b[0] for b in box]
    best_p = None
    best_v = -math.inf
    starts: list = []
    for r in range(cfg.refine_rounds):
        pts = _grid_points(box, n)
        vals = _batch_ll(model, x, pts, cfg)
        evals += len(pts)
        ok = None
        if feas_batch is not None:
            ok = feas_batch(pts)
            vals = np.where(ok, vals, -np.inf)
        if r == 0:
            if feas_batch is not None and not np.any(ok):
                # densify once before declaring the region unreachable
                pts = _grid_points(box, 4 * n)
                vals = _batch_ll(model, x, pts, cfg)
                evals += len(pts)
                ok = feas_batch(pts)
                vals = np.where(ok, vals, -np.inf)
                if not np.any(ok):
                    return None
            if not np.any(np.isfinite(vals)):
                # feasible points exist but the likelihood vanishes on all of them
                return -math.inf, None, evals, True
            sep = max(spans) / n * 2.5
            starts = _top_cells(pts, vals, cfg.multistarts, sep)
        v, i = kernels.max_argmax(vals)
        if math.isfinite(v) and (
            best_p is None or v > best_v or (v == best_v and tuple(pts[i]) < tuple(best_p))
        ):
            best_v, best_p = float(v), pts[i].copy()
        # zoom on the incumbent, three cells wide, clipped to the envelope
        for j in range(2):
            h = (box[j][1] - box[j][0]) / max(n - 1, 1)
            lo = max(eff_box[j][0], best_p[j] - 3 * h)
            hi = min(eff_box[j][1], best_p[j] + 3 * h)
            box[j] = [lo, hi]

    rng = np.random.default_rng(cfg.seed)
    sep0 = max(spans) / n
    nm_starts = [best_p]
    for s in starts:
        nm_starts.append(np.asarray(s, dtype=float))
        nm_starts.append(s + rng.uniform(-0.5, 0.5, size=2) * sep0)
    converged = True

    lo0 = np.array([b[0] for b in eff_box])
    hi0 = np.array([b[1] for b in eff_box])

    def neg_obj(p):
        q = np.minimum(np.maximum(p, lo0), hi0)
        v = model.loglik((float(q[0]), float(q[1])), x)
        if penalty_region is not None:
            w = violation(penalty_region, (float(q[0]), float(q[1])))
            v = v - _PENALTY * w * w
        # keep the simplex numerics finite on zero-likelihood plateaus
        return 1e18 if not math.isfinite(v) else -v

    nm_best_p, nm_best_v = None, -math.inf
    for s in nm_starts[: 2 * cfg.multistarts]:
        res = minimize(
            neg_obj,
            np.asarray(s, dtype=float),
            method="Nelder-Mead",
            options={"xatol": 1e-11, "fatol": 1e-13, "maxiter": 600},
        )
        evals += res.nfev
        q = np.minimum(np.maximum(res.x, lo0), hi0)
        cand = (float(q[0]), float(q[1]))
        v = model.loglik(cand, x)
        feas = feas_scalar(cand) if feas_scalar is not None else True
        if not feas:
            cand, v = _repair_witness(model, x, cand, best_p, feas_scalar)
        if v > nm_best_v or (v == nm_best_v and cand < nm_best_p):
            nm_best_p, nm_best_v = cand, v
        converged = converged and bool(res.success)
    if nm_best_v > best_v or (
        nm_best_v == best_v and nm_best_p is not None and tuple(nm_best_p) < tuple(best_p)
    ):
        best_v, best_p = nm_best_v, np.asarray(nm_best_p)
    return float(best_v), (float(best_p[0]), float(best_p[1])), evals, converged


def _repair_witness(model: StatModel, x, bad, good, feas_scalar):
    """Bisect from an infeasible polished point toward a feasible grid
    point until membership holds within 1e-9 in coordinates."""
    bad = np.asarray(bad, dtype=float)
    good = np.asarray(good, dtype=float)
    lo, hi = 0.0, 1.0  # fraction of the way toward `good`
    for _ in range(60):
        mid = 0.5 * (lo + hi)
        p = tuple(bad + mid * (good - bad))
        if feas_scalar(p):
            hi = mid
        else:
            lo = mid
        if np.max(np.abs(good - bad)) * (hi - lo) < 1e-9:
            break
    p = tuple(bad + hi * (good - bad))
    return p, model.loglik(p, x)


# ---------------------------------------------------------------------------
# per-cell solver for decomposed box-algebra regions


def _solve_cell(model: StatModel, x, ivs: tuple, cfg: OptConfig):
    dim = len(ivs)
    if all(iv.degenerate for iv in ivs):
        p = tuple(iv.lo for iv in ivs)
        return model.loglik(p, x), p, "enumeration", 1, True
    if cfg.use_closed_form:
        w = model.box_argmax(ivs, x)
        if w is not None:
            return model.loglik(w, x), tuple(w), "closed_form", 1, True
    if dim == 1:
        t, v, e, conv = _solve_interval_1d(model, x, ivs[0], cfg, _mle_anchor(model, x, 0, cfg))
        return v, (t,), "golden_section", e, conv
    if dim == 2:
        free = [j for j in range(2) if not ivs[j].degenerate]
        if len(free) == 1:
            j = free[0]
            fixed = ivs[1 - j].lo
            sub = _FrozenModel1D(model, x, j, fixed)
            t, v, e, conv = _solve_interval_1d(sub, x, ivs[j], cfg, _mle_anchor(model, x, j, cfg))
            p = [0.0, 0.0]
            p[j] = t
            p[1 - j] = fixed
            return v, tuple(p), "golden_section", e, conv
        eff = []
        for j in range(2):
            anchor = _mle_anchor(model, x, j, cfg)
            sub = _FrozenModel1D(model, x, j, _mle_anchor(model, x, 1 - j, cfg))
            lo, hi, _ = _effective_interval(
                lambda t: sub.loglik((t,), x), ivs[j], anchor
            )
            eff.append((lo, hi))
        out = _solve_box_2d(model, x, eff, cfg, None, None, None)
        if out is None:
            return -math.inf, None, "simplex_multistart", 0, True
        v, p, e, conv = out
        return v, p, "simplex_multistart", e, conv
    raise UnsupportedError("numeric optimization beyond 2 dimensions")


class _FrozenModel1D:
    """Adapter: a 2-D model with one coordinate pinned, seen as 1-D."""

    def __init__(self, model: StatModel, x, axis: int, fixed: float):
        self._m = model
        self._axis = axis
        self._fixed = fixed

    def loglik(self, theta, x) -> float:
        p = [0.0, 0.0]
        p[self._axis] = theta[0]
        p[1 - self._axis] = self._fixed
        return self._m.loglik(tuple(p), x)

    def batch_loglik(self, thetas: np.ndarray, x) -> np.ndarray:
        pts = np.empty((thetas.shape[0], 2))
        pts[:, self._axis] = thetas[:, 0]
        pts[:, 1 - self._axis] = self._fixed
        return self._m.batch_loglik(pts, x)

    def global_mle(self, x):
        return None


# ---------------------------------------------------------------------------
# equality-constraint regions (measure-zero level sets)


def _has_equality(region: Region) -> bool:
    if isinstance(region, Constraint):
        return region.op == "=="
    if isinstance(region, Complement):
        return _has_equality(region.of)
    if isinstance(region, (Union, Intersection)):
        return any(_has_equality(c) for c in region.of)
    return False


def _split_equality(region: Region):
    """One equality constraint plus a membership filter, or None.

    A bare curve {g == rhs}, or an intersection of exactly one such
    curve with equality-free sets, gets the dedicated level-set solver;
    anything else falls back to the masked paths.
    """
    if isinstance(region, Constraint) and region.op == "==":
        return region, None
    if isinstance(region, Intersection):
        eqs = [c for c in region.of if isinstance(c, Constraint) and c.op == "=="]
        if len(eqs) != 1:
            return None
        rest = tuple(c for c in region.of if c is not eqs[0])
        if any(_has_equality(c) for c in rest):
            return None
        if not rest:
            return eqs[0], None
        return eqs[0], rest[0] if len(rest) == 1 else Intersection(rest)
    return None


def _edge_root(gf, pa, pb, fa: float, fb: float) -> tuple:
    """Bisect a sign change of gf along the segment pa-pb."""
    a = np.asarray(pa, dtype=float)
    b = np.asarray(pb, dtype=float)
    if fa == 0.0:
        return tuple(float(t) for t in a)
    if fb == 0.0:
        return tuple(float(t) for t in b)
    for _ in range(80):
        m = 0.5 * (a + b)
        fm = gf(m)
        if fm == 0.0:
            a = b = m
            break
        if (fm < 0.0) == (fa < 0.0):
            a, fa = m, fm
        else:
            b, fb = m, fm
    return tuple(float(t) for t in 0.5 * (a + b))


def _equality_1d(model: StatModel, x, eq: Constraint, rest, cfg: OptConfig) -> SupResult:
    def f(t):
        return model.loglik((t,), x)

    lo, hi, evals = _effective_interval(f, model.space.bounds[0], _mle_anchor(model, x, 0, cfg))
    n = cfg.grid_for(1)
    ts = np.linspace(lo, hi, n)

    def gf(p):
        return float(eq.g((float(p[0]),))) - eq.rhs

    fv = _eval_g_batch(eq, ts[:, None]) - eq.rhs
    evals += n
    cands = []
    for i in range(n):
        if abs(fv[i]) <= 1e-13:
            cands.append((float(ts[i]),))
        if i + 1 < n and fv[i] * fv[i + 1] < 0.0:
            cands.append(_edge_root(gf, (ts[i],), (ts[i + 1],), fv[i], fv[i + 1]))
    kept = sorted({p for p in cands if rest is None or member(rest, p, "closure")})
    if not kept:
        return SupResult(-math.inf, None, "grid_refine", evals, True, True)
    best_v, best_p = -math.inf, None
    for p in kept:  # ascending scan keeps the lex-smallest witness on ties
        v = f(p[0])
        evals += 1
        if v > best_v:
            best_v, best_p = v, p
    _guard_cap(best_v)
    if best_v == -math.inf:
        return SupResult(-math.inf, None, "grid_refine", evals, True)
    return SupResult(best_v, best_p, "grid_refine", evals, True)


def _equality_2d(model: StatModel, x, eq: Constraint, rest, cfg: OptConfig) -> SupResult:
    space = model.space
    eff = _search_window_2d(model, x, rest, cfg)

    def gf(p):
        return float(eq.g((float(p[0]), float(p[1])))) - eq.rhs

    def keep(p) -> bool:
        if space.feasible is not None and not space.feasible(p):
            return False
        return rest is None or member(rest, p, "closure")

    n = cfg.grid_for(2)
    box = [list(b) for b in eff]
    evals = 0
    best_v, best_p = -math.inf, None
    found = False
    for _ in range(cfg.refine_rounds):
        xs = np.linspace(box[0][0], box[0][1], n)
        ys = np.linspace(box[1][0], box[1][1], n)
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        pts = np.column_stack([gx.ravel(), gy.ravel()])
        fgrid = (_eval_g_batch(eq, pts) - eq.rhs).reshape(n, n)
        evals += len(pts)
        zero = np.abs(fgrid) <= 1e-13
        cands = [(float(xs[i]), float(ys[j])) for i, j in zip(*np.nonzero(zero))]
        neg = fgrid < 0.0
        horiz = (neg[:-1, :] != neg[1:, :]) & ~zero[:-1, :] & ~zero[1:, :]
        for i, j in zip(*np.nonzero(horiz)):
            cands.append(
                _edge_root(gf, (xs[i], ys[j]), (xs[i + 1], ys[j]), fgrid[i, j], fgrid[i + 1, j])
            )
        vert = (neg[:, :-1] != neg[:, 1:]) & ~zero[:, :-1] & ~zero[:, 1:]
        for i, j in zip(*np.nonzero(vert)):
            cands.append(
                _edge_root(gf, (xs[i], ys[j]), (xs[i], ys[j + 1]), fgrid[i, j], fgrid[i, j + 1])
            )
        kept = sorted({p for p in cands if keep(p)})
        if kept:
            found = True
            vals = _batch_ll(model, x, np.asarray(kept, dtype=float), cfg)
            evals += len(kept)
            v, i = kernels.max_argmax(vals)
            v, p = float(v), kept[int(i)]
            if best_p is None or v > best_v or (v == best_v and p < best_p):
                best_v, best_p = v, p
        elif best_p is None:
            # the envelope holds no part of the level set
            return SupResult(-math.inf, None, "grid_refine", evals, True, True)
        for j2 in range(2):
            h = (box[j2][1] - box[j2][0]) / max(n - 1, 1)
            center = best_p[j2] if best_p is not None else 0.5 * (box[j2][0] + box[j2][1])
            box[j2] = [max(eff[j2][0], center - 3 * h), min(eff[j2][1], center + 3 * h)]
    if not found:
        return SupResult(-math.inf, None, "grid_refine", evals, True, True)
    _guard_cap(best_v)
    if best_v == -math.inf:
        return SupResult(-math.inf, None, "grid_refine", evals, True)
    return SupResult(best_v, (float(best_p[0]), float(best_p[1])), "grid_refine", evals, True)


# ---------------------------------------------------------------------------
# masked numeric paths (general constraint/predicate regions)


def _masked_1d(model: StatModel, x, region: Region, cfg: OptConfig):
    iv = model.space.bounds[0]

    def f(t):
        return model.loglik((t,), x)

    lo, hi, evals = _effective_interval(f, iv, _mle_anchor(model, x, 0, cfg))
    n = cfg.grid_for(1)
    ts = mask = None
    for attempt in range(3):
        ts = np.linspace(lo, hi, n * (4**attempt))
        mask = member_batch(region, ts[:, None], "closure")
        if np.any(mask):
            break
    if not np.any(mask):
        return SupResult(-math.inf, None, "golden_section", evals + len(ts), True, True)
    vals = _batch_ll(model, x, ts[:, None], cfg)
    evals += len(ts)
    masked = np.where(mask, vals, -np.inf)
    v0, i0 = kernels.max_argmax(masked)
    best_t, best_v = float(ts[i0]), float(v0)

    def fm(t):
        if member(region, (t,), "closure"):
            return f(t)
        return -math.inf

    idx = np.flatnonzero(mask)
    runs = np.split(idx, np.flatnonzero(np.diff(idx) > 1) + 1)
    converged = True
    for run in runs:
        a_i, b_i = run[0], run[-1]
        a = _edge_bisect(region, ts[a_i - 1], ts[a_i]) if a_i > 0 else ts[0]
        b = (
            _edge_bisect(region, ts[b_i + 1], ts[b_i])
            if b_i < len(ts) - 1
            else ts[-1]
        )
        t, v, e, conv = _golden(fm, a, b)
        evals += e
        converged = converged and conv
        if v > best_v or (v == best_v and t < best_t):
            best_t, best_v = t, v
    _guard_cap(best_v)
    if best_v == -math.inf:
        # reachable points, identically zero likelihood
        return SupResult(-math.inf, None, "golden_section", evals, converged)
    return SupResult(best_v, (best_t,), "golden_section", evals, converged)


def _edge_bisect(region: Region, out_t: float, in_t: float) -> float:
    """Refine a 1-D closure boundary between an excluded and an included
    point; returns an included point within 1e-12 of the boundary."""
    for _ in range(60):
        mid = 0.5 * (out_t + in_t)
        if member(region, (mid,), "closure"):
            in_t = mid
        else:
            out_t = mid
        if abs(in_t - out_t) < 1e-12 * max(1.0, abs(in_t)):
            break
    return in_t


def _eff_box_2d(model: StatModel, x, cfg: OptConfig) -> list:
    eff = []
    for j in range(2):
        iv = model.space.bounds[j]
        sub = _FrozenModel1D(model, x, j, _mle_anchor(model, x, 1 - j, cfg))
        lo, hi, _ = _effective_interval(
            lambda t: sub.loglik((t,), x), iv, _mle_anchor(model, x, j, cfg)
        )
        eff.append((lo, hi))
    return eff


def _region_hull_2d(region: Region | None):
    """Finite bounds implied by explicit box structure, or None."""
    if isinstance(region, Box) and len(region.intervals) == 2:
        return [[iv.lo, iv.hi] for iv in region.intervals]
    if isinstance(region, Intersection):
        hulls = [h for h in (_region_hull_2d(c) for c in region.of) if h is not None]
        if not hulls:
            return None
        out = hulls[0]
        for h in hulls[1:]:
            for j in range(2):
                out[j][0] = max(out[j][0], h[j][0])
                out[j][1] = min(out[j][1], h[j][1])
        return out
    if isinstance(region, Union):
        hulls = [_region_hull_2d(c) for c in region.of]
        if any(h is None for h in hulls):
            return None
        out = hulls[0]
        for h in hulls[1:]:
            for j in range(2):
                out[j][0] = min(out[j][0], h[j][0])
                out[j][1] = max(out[j][1], h[j][1])
        return out
    return None


def _search_window_2d(model: StatModel, x, region: Region | None, cfg: OptConfig):
    """Box the masked and level-set scans should cover.

    The probed envelope is a heuristic around the MLE and cannot see a
    region living far from it, so any finite bound the region itself
    declares through box structure takes precedence.
    """
    hull = _region_hull_2d(region)
    space = model.space
    eff = None
    out = []
    for j in range(2):
        lo = hull[j][0] if hull is not None else -math.inf
        hi = hull[j][1] if hull is not None else math.inf
        if math.isfinite(lo):
            lo = max(lo, space.bounds[j].lo)
        if math.isfinite(hi):
            hi = min(hi, space.bounds[j].hi)
        if not (math.isfinite(lo) and math.isfinite(hi)):
            if eff is None:
                eff = _eff_box_2d(model, x, cfg)
            if not math.isfinite(lo):
                lo = eff[j][0]
            if not math.isfinite(hi):
                hi = min(eff[j][1], hi)
        out.append((lo, hi))
    return out


def _axis_eval(j: int):
    def g(p):
        return float(p[j])

    return g


def _linear_faces(region: Region):
    """(coeffs, rhs) pairs for every linear face of the region."""
    if isinstance(region, Constraint) and region.coeffs is not None:
        yield region.coeffs, region.rhs
    elif isinstance(region, Box) and len(region.intervals) == 2:
        for j, iv in enumerate(region.intervals):
            coeffs = (1.0, 0.0) if j == 0 else (0.0, 1.0)
            for v in (iv.lo, iv.hi):
                if math.isfinite(v):
                    yield coeffs, float(v)
    elif isinstance(region, Intersection):
        for child in region.of:
            yield from _linear_faces(child)


def _vertex_candidates(model: StatModel, x, region: Region, cfg: OptConfig) -> SupResult:
    """Exact pairwise intersections of the region's linear faces.

    A constrained supremum frequently sits on a corner where two faces
    meet; grid refinement only approaches such a point, while the 2x2
    linear solve lands on it exactly.
    """
    faces = list(_linear_faces(region))
    space = model.space
    pts = []
    for i in range(len(faces)):
        a1, b1 = faces[i]
        for j in range(i + 1, len(faces)):
            a2, b2 = faces[j]
            det = a1[0] * a2[1] - a1[1] * a2[0]
            if abs(det) < 1e-14:
                continue
            p = (
                (b1 * a2[1] - b2 * a1[1]) / det,
                (a1[0] * b2 - a2[0] * b1) / det,
            )
            if space.feasible is not None and not space.feasible(p):
                continue
            if member(region, p, "closure") or violation(region, p) <= 1e-9:
                pts.append(p)
    if not pts:
        return SupResult(-math.inf, None, "vertex_solve", 0, True, True)
    pts = sorted(set(pts))
    vals = _batch_ll(model, x, np.asarray(pts, dtype=float), cfg)
    v, i = kernels.max_argmax(vals)
    if float(v) == -math.inf:
        return SupResult(-math.inf, None, "vertex_solve", len(pts), True)
    _guard_cap(float(v))
    return SupResult(float(v), pts[int(i)], "vertex_solve", len(pts), True)


def _boundary_candidates(region: Region):
    """Inequality faces of a masked region worth a level-set solve.

    Grid-and-polish stops short of a supremum that sits exactly on a
    constraint boundary or box face, and misses a feasible sliver
    thinner than its cells entirely, so every face of a bare constraint
    or of an intersection's constraint and box children is handed to the
    sharper equality solver with the whole region as a side condition.
    """
    if isinstance(region, Constraint) and region.op != "==":
        yield Constraint(region.g, "==", region.rhs, region.coeffs), None
        return
    if not isinstance(region, Intersection):
        return
    for child in region.of:
        if isinstance(child, Constraint) and child.op != "==":
            yield Constraint(child.g, "==", child.rhs, child.coeffs), region
        elif isinstance(child, Box) and len(child.intervals) == 2:
            for j, iv in enumerate(child.intervals):
                coeffs = (1.0, 0.0) if j == 0 else (0.0, 1.0)
                for v in (iv.lo, iv.hi):
                    if math.isfinite(v):
                        yield Constraint(_axis_eval(j), "==", float(v), coeffs), region


def _masked_2d(model: StatModel, x, region: Region, cfg: OptConfig):
    space = model.space
    eff = _search_window_2d(model, x, region, cfg)

    def feas_batch(pts):
        ok = member_batch(region, pts, "closure")
        if space.feasible is not None:
            amb = np.fromiter(
                (space.feasible(tuple(row)) for row in pts), dtype=bool, count=len(pts)
            )
            ok = ok & amb
        return ok

    def feas_scalar(p):
        if space.feasible is not None and not space.feasible(p):
            return False
        return member(region, p, "closure")

    out = _solve_box_2d(model, x, eff, cfg, feas_batch, feas_scalar, region)
    if out is None:
        return SupResult(-math.inf, None, "simplex_multistart", 0, True, True)
    v, p, e, conv = out
    _guard_cap(v)
    return SupResult(v, p, "simplex_multistart", e, conv)


# ---------------------------------------------------------------------------
# public entry points


def restricted_sup(model: StatModel, x, region: Region, cfg: OptConfig | None = None) -> SupResult:
    """sup of loglik over the closure of `region`, per the module doc."""
    cfg = cfg or OptConfig()
    space = model.space
    if isinstance(region, Empty):
        return SupResult(-math.inf, None, "enumeration", 0, True, True)
    if isinstance(space, FiniteSpace):
        return _enumerate_sup(model, x, region)
    if not isinstance(space, ContinuousSpace):
        raise InputError(f"unsupported space type {type(space).__name__}")
    if space.dim > 2:
        raise UnsupportedError("continuous spaces beyond 2 dimensions")
    if isinstance(region, FiniteSet):
        return _point_set_sup(model, x, region, space)
    if cfg.use_closed_form:
        if isinstance(region, Full):
            mles = model.global_mle(x)
            if mles:
                pts = sorted(tuple(float(t) for t in p) for p in mles)
                vals = [model.loglik(p, x) for p in pts]
                v, i = kernels.max_argmax(np.asarray(vals))
                _guard_cap(v)
                return SupResult(float(v), pts[i], "closed_form", len(pts), True)
        w = model.region_argmax(region, x)
        if w is not None:
            wp = tuple(w)
            # a closed-form witness may sit on the closure boundary with
            # rounding of order 1 ulp, so allow a tiny violation
            if member(region, wp, "closure") or violation(region, wp) <= 1e-9:
                v = model.loglik(wp, x)
                _guard_cap(v)
                return SupResult(v, wp, "closed_form", 1, True)
    cells = decompose(region, space)
    if cells is not None:
        if not cells:
            return SupResult(-math.inf, None, "enumeration", 0, True, True)
        results = [_solve_cell(model, x, ivs, cfg) for ivs in cells]
        best = None
        evals = 0
        converged = True
        for v, p, meth, e, conv in results:
            evals += e
            converged = converged and conv
            if p is None:
                continue
            if best is None or v > best[0] or (v == best[0] and p < best[1]):
                best = (v, p, meth)
        if best is None or best[0] == -math.inf:
            # cells exist, so the closure is nonempty; the likelihood is
            # simply zero over all of it
            return SupResult(-math.inf, None, "enumeration", evals, converged, False)
        _guard_cap(best[0])
        return SupResult(best[0], best[1], best[2], evals, converged)
    if isinstance(region, Union):
        # sup over a union is the best of the member sups, and each
        # member gets its own best solving path
        parts = [restricted_sup(model, x, c, cfg) for c in region.of]
        evals = sum(p.evaluations for p in parts)
        converged = all(p.converged for p in parts)
        best = None
        for p in parts:
            if p.witness is None:
                continue
            if best is None or p.sup_loglik > best.sup_loglik or (
                p.sup_loglik == best.sup_loglik and p.witness < best.witness
            ):
                best = p
        if best is None:
            no_feas = all(p.no_feasible for p in parts)
            return SupResult(-math.inf, None, "enumeration", evals, converged, no_feas)
        return SupResult(best.sup_loglik, best.witness, best.method, evals, converged)
    split = _split_equality(region)
    if split is not None:
        if space.dim == 1:
            return _equality_1d(model, x, split[0], split[1], cfg)
        return _equality_2d(model, x, split[0], split[1], cfg)
    if space.dim == 1:
        return _masked_1d(model, x, region, cfg)
    out = _masked_2d(model, x, region, cfg)
    for eq, rest in _boundary_candidates(region):
        out = _better_sup(out, _equality_2d(model, x, eq, rest, cfg))
    out = _better_sup(out, _vertex_candidates(model, x, region, cfg))
    return out


def _better_sup(a: SupResult, b: SupResult) -> SupResult:
    evals = a.evaluations + b.evaluations
    converged = a.converged and b.converged
    pick = a
    if a.witness is None:
        pick = b if b.witness is not None else a
    elif b.witness is not None and (
        b.sup_loglik > a.sup_loglik
        or (b.sup_loglik == a.sup_loglik and b.witness < a.witness)
    ):
        pick = b
    return SupResult(
        pick.sup_loglik,
        pick.witness,
        pick.method,
        evals,
        converged,
        a.no_feasible and b.no_feasible,
    )


def global_sup(model: StatModel, x, cfg: OptConfig | None = None) -> SupResult:
    """Supremum over the whole space; witness belongs to the MLE set."""
    return restricted_sup(model, x, Full(), cfg)


def mle_set(model: StatModel, x, cfg: OptConfig | None = None) -> list:
    """Maximum-likelihood set: exact for finite spaces; for continuous
    spaces, the distinct near-optimal witnesses found by the engine,
    deduplicated at coordinate resolution 1e-6."""
    cfg = cfg or OptConfig()
    space = model.space
    if isinstance(space, FiniteSpace):
        vals = [model.loglik(i, x) for i in range(len(space))]
        best = max(vals)
        if best == -math.inf:
            return []
        cut = best + math.log(1.0 - 1e-9)
        return [space.values[i] for i, v in enumerate(vals) if v >= cut]
    if cfg.use_closed_form:
        mles = model.global_mle(x)
        if mles:
            return sorted({tuple(float(t) for t in p) for p in mles})
    # numeric: collect grid candidates near the top, polish, dedupe
    g = global_sup(model, x, cfg)
    if space.dim == 1:
        iv = space.bounds[0]

        def f(t):
            return model.loglik((t,), x)

        lo, hi, _ = _effective_interval(f, iv, _mle_anchor(model, x, 0, cfg))
        ts = np.linspace(lo, hi, max(cfg.grid_for(1), 2048))
        vals = _batch_ll(model, x, ts[:, None], cfg)
        keep = vals >= g.sup_loglik - 1e-6
        cands = [(float(t),) for t in ts[keep]]
    else:
        eff = []
        for j in range(2):
            sub = _FrozenModel1D(model, x, j, _mle_anchor(model, x, 1 - j, cfg))
            lo, hi, _ = _effective_interval(
                lambda t: sub.loglik((t,), x), space.bounds[j], _mle_anchor(model, x, j, cfg)
            )
            eff.append((lo, hi))
        pts = _grid_points(eff, 192)
        vals = _batch_ll(model, x, pts, cfg)
        keep = vals >= g.sup_loglik - 1e-6
        cands = [tuple(map(float, p)) for p in pts[keep]]
    if g.witness is not None:
        cands.append(tuple(g.witness))
    out = {}
    for p in sorted(cands):
        key = tuple(round(t / 1e-6) for t in p)
        if key not in out:
            out[key] = p
    return sorted(out.values())
