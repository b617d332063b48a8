"""Both batch-kernel backends must agree on the same inputs."""

import math

import numpy as np
import pytest

from lrpossib import _gridcore_py as py

cy = pytest.importorskip("lrpossib._gridcore")

rng = np.random.default_rng(7)


def _assert_same(a, b):
    a = np.asarray(a)
    b = np.asarray(b)
    assert a.shape == b.shape
    both_inf = np.isneginf(a) & np.isneginf(b)
    close = np.isclose(a, b, rtol=1e-13, atol=0.0)
    assert np.all(both_inf | close)


def test_binom_agree():
    theta = np.concatenate([rng.uniform(-0.2, 1.2, 400), [0.0, 1.0, 0.5]])
    for x, n in [(0, 8), (4, 8), (8, 8), (37, 100)]:
        logc = math.lgamma(n + 1) - math.lgamma(x + 1) - math.lgamma(n - x + 1)
        _assert_same(
            cy.binom_loglik(theta, x, n, logc), py.binom_loglik(theta, x, n, logc)
        )


def test_poisson_agree():
    theta = np.concatenate([rng.uniform(-1.0, 30.0, 400), [0.0]])
    for x in [0, 3, 17]:
        logc = -math.lgamma(x + 1)
        _assert_same(cy.poisson_loglik(theta, x, logc), py.poisson_loglik(theta, x, logc))


def test_normal_agree():
    mu = rng.uniform(-5, 5, 500)
    s2 = rng.uniform(-0.5, 4.0, 500)
    _assert_same(
        cy.normal_loglik(mu, s2, 1.2, 0.8, 20.0),
        py.normal_loglik(mu, s2, 1.2, 0.8, 20.0),
    )


def test_trinom_agree():
    t1 = rng.uniform(-0.1, 1.1, 600)
    t3 = rng.uniform(-0.1, 1.1, 600)
    logc = (
        math.lgamma(11) - math.lgamma(6) - math.lgamma(1) - math.lgamma(6)
    )
    _assert_same(
        cy.trinom_loglik(t1, t3, 5, 0, 5, logc), py.trinom_loglik(t1, t3, 5, 0, 5, logc)
    )


def test_trinom_edge_counts_zero_times_log_zero():
    # y=0 coordinates contribute nothing even at the simplex boundary
    t1 = np.array([0.0, 1.0, 0.5])
    t3 = np.array([1.0, 0.0, 0.5])
    a = cy.trinom_loglik(t1, t3, 0, 0, 10, 0.0)
    b = py.trinom_loglik(t1, t3, 0, 0, 10, 0.0)
    _assert_same(a, b)
    assert math.isfinite(a[0])


def test_max_argmax_agree():
    vals = rng.normal(size=257)
    va, ia = cy.max_argmax(vals)
    vb, ib = py.max_argmax(vals)
    assert ia == ib
    assert va == vb
    assert py.max_argmax(np.array([]))[1] == -1
    assert cy.max_argmax(np.array([]))[1] == -1


def test_backend_env_is_honored():
    from lrpossib import kernels

    assert kernels.BACKEND in ("cython", "python")
