"""Level-set sampling and boundary extraction."""

import math

import numpy as np
import pytest

from lrpossib import (
    InputError,
    NormalStats,
    UnsupportedError,
    binom_nu,
    contour,
    make_model,
)

BINOM8 = make_model("binomial", {"n": 8}, None)


def test_domain_checks():
    with pytest.raises(InputError):
        contour(BINOM8, 4, 0.0)
    with pytest.raises(InputError):
        contour(BINOM8, 4, 1.5)
    m = make_model("severini", {}, 6)
    with pytest.raises(UnsupportedError):
        contour(m, 6, 0.5)


def test_1d_lambda_matches_pointwise():
    c = contour(BINOM8, 4, 0.25, grid=801, bounds=[(0.01, 0.99)])
    ts = c.axes[0]
    for i in range(0, len(ts), 97):
        assert c.lam[i] == pytest.approx(binom_nu(float(ts[i]), 4, 8), rel=1e-10)
    assert c.segments == []


def test_1d_inside_interval():
    c = contour(BINOM8, 4, 0.25, grid=4001, bounds=[(0.0, 1.0)])
    ts = c.axes[0]
    ins = ts[c.inside]
    # quarter-level crossing points for x=4, n=8
    assert ins.min() == pytest.approx(0.2309, abs=2e-3)
    assert ins.max() == pytest.approx(0.7691, abs=2e-3)
    assert np.all(c.inside == (c.lam >= 0.25))


def test_alpha_one_degenerate():
    c = contour(BINOM8, 4, 1.0)
    assert c.mle_points == ((0.5,),)
    assert c.segments == []


def test_2d_segments_straddle_level():
    m = make_model("normal", {}, None)
    x = NormalStats(mean=0.0, var=1.0, n=20)
    c = contour(m, x, 0.25, grid=101)
    assert len(c.segments) > 0
    glob = m.loglik((0.0, 1.0), x)
    for (x0, y0), (x1, y1) in c.segments[::7]:
        lam0 = math.exp(min(0.0, m.loglik((x0, y0), x) - glob))
        lam1 = math.exp(min(0.0, m.loglik((x1, y1), x) - glob))
        # endpoints come from linear interpolation along cell edges, so
        # they sit near the level within a cell-size error
        assert abs(lam0 - 0.25) < 0.05
        assert abs(lam1 - 0.25) < 0.05


def test_2d_inside_flags():
    m = make_model("normal", {}, None)
    x = NormalStats(mean=0.0, var=1.0, n=20)
    c = contour(m, x, 0.5, grid=51)
    assert c.lam.shape == (51, 51)
    assert np.all(c.inside == (c.lam >= 0.5))
    # the MLE cell is inside
    i = int(np.argmin(np.abs(c.axes[0] - 0.0)))
    j = int(np.argmin(np.abs(c.axes[1] - 1.0)))
    assert c.inside[i, j]


def test_2d_respects_feasibility():
    m = make_model("trinomial", {}, None)
    c = contour(m, (5, 0, 5), 0.1, grid=61, bounds=[(0.0, 1.0), (0.0, 1.0)])
    g1, g2 = np.meshgrid(c.axes[0], c.axes[1], indexing="ij")
    outside_simplex = g1 + g2 > 1.0 + 1e-9
    assert np.all(c.lam[outside_simplex] == 0.0)


def test_explicit_bounds_clip_the_window():
    c = contour(BINOM8, 4, 0.25, grid=101, bounds=[(0.45, 0.55)])
    assert c.axes[0][0] == pytest.approx(0.45)
    assert c.axes[0][-1] == pytest.approx(0.55)
    assert np.all(c.inside)
