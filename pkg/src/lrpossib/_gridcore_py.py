"""Pure-numpy batch log-likelihood kernels.

Mirror of _gridcore.pyx; keep formulas and operation order in sync so the
two backends agree bit for bit.  Guard conventions: parameters outside
the (closed) natural domain give -inf, 0*log(0) gives 0, never NaN.
"""
import numpy as np
from scipy.special import xlogy

_TWO_PI = 6.283185307179586476925287
_SIMPLEX_TOL = 1e-12


def binom_loglik(theta, x, n, logc):
    theta = np.asarray(theta, dtype=float)
    out = np.full(theta.shape, -np.inf)
    ok = (theta >= 0.0) & (theta <= 1.0)
    t = theta[ok]
    with np.errstate(divide="ignore"):
        out[ok] = xlogy(x, t) + xlogy(n - x, 1.0 - t) + logc
    return out


def poisson_loglik(theta, x, logc):
    theta = np.asarray(theta, dtype=float)
    out = np.full(theta.shape, -np.inf)
    ok = theta >= 0.0
    t = theta[ok]
    with np.errstate(divide="ignore"):
        out[ok] = -t + xlogy(x, t) + logc
    return out


def normal_loglik(mu, s2, m, s2x, n):
    mu = np.asarray(mu, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    out = np.full(mu.shape, -np.inf)
    ok = s2 > 0.0
    u, v = mu[ok], s2[ok]
    out[ok] = -0.5 * n * np.log(_TWO_PI * v) - n * (s2x + (u - m) * (u - m)) / (2.0 * v)
    return out


def trinom_loglik(t1, t3, y1, y2, y3, logc):
    t1 = np.asarray(t1, dtype=float)
    t3 = np.asarray(t3, dtype=float)
    t2 = 1.0 - t1 - t3
    out = np.full(t1.shape, -np.inf)
    ok = (t1 >= -_SIMPLEX_TOL) & (t3 >= -_SIMPLEX_TOL) & (t2 >= -_SIMPLEX_TOL)
    a = np.maximum(t1[ok], 0.0)
    c = np.maximum(t3[ok], 0.0)
    b = np.maximum(t2[ok], 0.0)
    with np.errstate(divide="ignore"):
        out[ok] = xlogy(y1, a) + xlogy(y2, b) + xlogy(y3, c) + logc
    return out


def max_argmax(vals):
    vals = np.asarray(vals, dtype=float)
    if vals.size == 0:
        return -np.inf, -1
    i = int(np.argmax(vals))
    return float(vals[i]), i
