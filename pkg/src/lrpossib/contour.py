"""Level sets of the normalized likelihood.

For a 1-D model the level set {theta : lambda(theta, x) >= alpha} is
reported as a grid of lambda values with inside flags.  For a 2-D model
the boundary lambda = alpha is traced by marching squares on the same
grid, with linear interpolation along cell edges; points outside the
model's feasible set carry lambda = 0 and so fall naturally on the
outside.  alpha = 1 degenerates to the maximum-likelihood set.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError, UnsupportedError
from .evidence import check_sample_usable
from .model import StatModel
from .optimize import OptConfig, _effective_interval, _mle_anchor, global_sup, mle_set
from .space import ContinuousSpace

_ALPHA_ONE = 1.0 - 1e-12


@dataclass(frozen=True)
class ContourData:
    """Sampled lambda values and, in 2-D, the traced alpha-boundary.

    axes holds the grid coordinates per dimension.  lam has shape
    (n1,) in 1-D and (n1, n2) in 2-D, indexed [i, j] for axes[0][i],
    axes[1][j].  segments is a list of ((x0, y0), (x1, y1)) pieces of
    the boundary, empty in 1-D.  mle_points is only populated in the
    degenerate alpha = 1 case.
    """

    alpha: float
    axes: tuple
    lam: np.ndarray
    inside: np.ndarray
    segments: list
    mle_points: tuple


def _default_bounds(model: StatModel, x, cfg: OptConfig) -> list[tuple[float, float]]:
    space = model.space
    anchor = [_mle_anchor(model, x, axis, cfg) for axis in range(space.dim)]
    bounds = []
    for axis, iv in enumerate(space.bounds):
        def f(t: float, _axis=axis) -> float:
            p = list(anchor)
            p[_axis] = t
            return model.loglik(tuple(p), x)

        lo, hi, _ = _effective_interval(f, iv, anchor[axis])
        if lo == hi:
            pad = max(1e-6, 1e-6 * abs(lo))
            lo, hi = lo - pad, hi + pad
        bounds.append((lo, hi))
    return bounds


def _marching_squares(xs: np.ndarray, ys: np.ndarray, field: np.ndarray) -> list:
    """Trace the zero level of `field` sampled at xs x ys.

    field[i, j] corresponds to (xs[i], ys[j]).  Returns line segments in
    data coordinates.  Saddle cells are split by the cell-center mean.
    """
    segs: list = []
    n1, n2 = field.shape

    def interp(pa, pb, va, vb):
        if va == vb:
            t = 0.5
        else:
            t = va / (va - vb)
        t = min(1.0, max(0.0, t))
        return (pa[0] + t * (pb[0] - pa[0]), pa[1] + t * (pb[1] - pa[1]))

    for i in range(n1 - 1):
        for j in range(n2 - 1):
            v00 = field[i, j]
            v10 = field[i + 1, j]
            v11 = field[i + 1, j + 1]
            v01 = field[i, j + 1]
            vals = (v00, v10, v11, v01)
            if not all(math.isfinite(v) for v in vals):
                continue
            idx = (v00 >= 0) | ((v10 >= 0) << 1) | ((v11 >= 0) << 2) | ((v01 >= 0) << 3)
            if idx in (0, 15):
                continue
            p00 = (xs[i], ys[j])
            p10 = (xs[i + 1], ys[j])
            p11 = (xs[i + 1], ys[j + 1])
            p01 = (xs[i], ys[j + 1])
            # edge order: bottom (00-10), right (10-11), top (11-01), left (01-00)
            e = {
                "b": interp(p00, p10, v00, v10),
                "r": interp(p10, p11, v10, v11),
                "t": interp(p11, p01, v11, v01),
                "l": interp(p01, p00, v01, v00),
            }
            table = {
                1: [("l", "b")],
                2: [("b", "r")],
                3: [("l", "r")],
                4: [("r", "t")],
                6: [("b", "t")],
                7: [("l", "t")],
                8: [("t", "l")],
                9: [("t", "b")],
                11: [("t", "r")],
                12: [("r", "l")],
                13: [("r", "b")],
                14: [("b", "l")],
            }
            if idx in (5, 10):
                center = (v00 + v10 + v11 + v01) / 4.0
                if idx == 5:
                    pairs = [("l", "b"), ("r", "t")] if center < 0 else [("l", "t"), ("r", "b")]
                else:
                    pairs = [("b", "r"), ("t", "l")] if center < 0 else [("b", "l"), ("t", "r")]
            else:
                pairs = table[idx]
            for a, b in pairs:
                segs.append((e[a], e[b]))
    return segs


def contour(
    model: StatModel,
    x,
    alpha: float,
    grid: int | None = None,
    bounds: list | None = None,
    cfg: OptConfig | None = None,
) -> ContourData:
    """Sample lambda(., x) and extract the alpha level set."""
    if not 0.0 < alpha <= 1.0:
        raise InputError(f"alpha={alpha} outside (0, 1]")
    space = model.space
    if not isinstance(space, ContinuousSpace):
        raise UnsupportedError("contours are defined for continuous parameter spaces")
    if space.dim > 2:
        raise UnsupportedError("contours support at most 2 parameter dimensions")
    cfg = cfg or OptConfig()
    check_sample_usable(model, x)
    glob = global_sup(model, x, cfg)

    if alpha >= _ALPHA_ONE:
        pts = mle_set(model, x, cfg)
        lam = np.ones(len(pts))
        return ContourData(alpha, (), lam, np.ones(len(pts), dtype=bool), [], tuple(pts))

    if bounds is None:
        bounds = _default_bounds(model, x, cfg)
    if len(bounds) != space.dim:
        raise InputError("bounds must give one (lo, hi) pair per dimension")

    if space.dim == 1:
        n = grid or 512
        lo, hi = bounds[0]
        ts = np.linspace(lo, hi, n)
        ll = np.asarray(model.batch_loglik(ts[:, None], x))
        lam = np.exp(np.minimum(0.0, ll - glob.sup_loglik))
        lam[ll == -math.inf] = 0.0
        inside = lam >= alpha
        return ContourData(alpha, (ts,), lam, inside, [], ())

    n = grid or 201
    (lo1, hi1), (lo2, hi2) = bounds
    xs = np.linspace(lo1, hi1, n)
    ys = np.linspace(lo2, hi2, n)
    g1, g2 = np.meshgrid(xs, ys, indexing="ij")
    pts = np.column_stack([g1.ravel(), g2.ravel()])
    if space.feasible is not None:
        ok = np.fromiter(
            (space.feasible(tuple(row)) for row in pts), dtype=bool, count=len(pts)
        )
        ll = np.full(len(pts), -math.inf)
        if ok.any():
            ll[ok] = np.asarray(model.batch_loglik(pts[ok], x))
    else:
        ll = np.asarray(model.batch_loglik(pts, x))
    ll = ll.reshape(n, n)
    lam = np.exp(np.minimum(0.0, ll - glob.sup_loglik))
    lam[ll == -math.inf] = 0.0
    inside = lam >= alpha
    segs = _marching_squares(xs, ys, lam - alpha)
    return ContourData(alpha, (xs, ys), lam, inside, segs, ())
