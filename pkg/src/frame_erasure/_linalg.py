"""Thin wrappers over LAPACK factorizations with condition estimates."""
import warnings

import numpy as np
import scipy.linalg
from scipy.linalg import LinAlgWarning
from scipy.linalg.lapack import dgecon


def lu_factor_rcond(a, scale=None):
    """LU-factorize ``a`` with partial pivoting.

    Returns ``(lu_and_piv, rcond)`` where ``rcond`` is LAPACK's estimate of
    ``1 / (||a||_1 ||a^{-1}||_1)``. With ``scale`` the estimate becomes
    ``1 / (scale ||a^{-1}||_1)``, the distance to singularity relative to
    ``scale`` instead of to ``||a||_1``. An exactly zero pivot gives ``rcond = 0``.
    """
    a = np.asarray(a, dtype=np.float64)
    anorm = np.linalg.norm(a, 1)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    if anorm == 0.0 or np.any(np.diag(lu) == 0.0):
        return (lu, piv), 0.0
    rcond, info = dgecon(lu, anorm, norm="1")
    if info != 0:
        return (lu, piv), 0.0
    if scale is not None:
        rcond *= anorm / scale
    return (lu, piv), float(rcond)


def lu_solve(factors, b):
    return scipy.linalg.lu_solve(factors, b, check_finite=False)


def cho_factor(a):
    """Cholesky factor of an SPD matrix; raises ``numpy.linalg.LinAlgError`` otherwise."""
    return scipy.linalg.cho_factor(a, lower=True, check_finite=False)


def cho_solve(factors, b):
    return scipy.linalg.cho_solve(factors, b, check_finite=False)


def dominant_eigenvalue(apply, n, rtol=1e-12, maxiter=5000, seed=0):
    """Largest eigenvalue of a symmetric positive semi-definite operator.

    Plain power iteration started from the normalized all-ones vector. The
    Rayleigh quotient is the estimate; iteration stops once it changes by at
    most ``rtol`` relative. If an iterate is annihilated (start vector in the
    null space) the start is redrawn from a fixed-seed Gaussian generator.
    """
    v = np.full(n, 1.0 / np.sqrt(n))
    rng = None
    estimate = 0.0
    for _ in range(maxiter):
        w = apply(v)
        new_estimate = float(v @ w)
        norm_w = np.linalg.norm(w)
        if norm_w == 0.0:
            if rng is None:
                rng = np.random.default_rng(seed)
            elif estimate == 0.0 and new_estimate == 0.0:
                # second annihilated draw: treat as the zero operator
                return 0.0
            v = rng.standard_normal(n)
            v /= np.linalg.norm(v)
            continue
        if abs(new_estimate - estimate) <= rtol * abs(new_estimate):
            return new_estimate
        estimate = new_estimate
        v = w / norm_w
    return estimate
