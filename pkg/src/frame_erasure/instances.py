"""Random problem instances for property checks and the ``verify`` command."""
import numpy as np

from .dual_construction import canonical_dual, dual_from_perturbation, random_dual
from .frame_core import ErasureSet, Frame

_DYADIC = np.array([-1.0, -0.5, 0.0, 0.5, 1.0])


def gaussian_frame(rng, r, n):
    return Frame(rng.standard_normal((r, n)))


def gaussian_instance(rng, r_range=(5, 50), max_k=10, canonical=False):
    """Gaussian frame with ``r <= N <= 3r`` and ``E = {0..k-1}``, ``k <= min(max_k, N - r)``.

    Returns ``(X, Z, E)``; ``Z`` is the canonical dual or a random dual.
    """
    r = int(rng.integers(r_range[0], r_range[1] + 1))
    n = int(rng.integers(r + 1, 3 * r + 1))
    k = int(rng.integers(1, min(max_k, n - r) + 1))
    x = gaussian_frame(rng, r, n)
    y = canonical_dual(x)
    z = y if canonical else random_dual(x, y, rng)
    return x, z, ErasureSet.first(k, n)


def degenerate_instance(rng, r_range=(3, 20), max_k=6):
    """Gaussian frame whose survivors lie in a hyperplane, so ``E`` fails MRC."""
    r = int(rng.integers(r_range[0], r_range[1] + 1))
    k = int(rng.integers(1, max_k + 1))
    n = k + int(rng.integers(r, 2 * r + 1))
    basis = np.linalg.qr(rng.standard_normal((r, r - 1)))[0]
    survivors = basis @ rng.standard_normal((r - 1, n - k))
    x = Frame(np.column_stack([rng.standard_normal((r, k)), survivors]))
    return x, ErasureSet.first(k, n)


def group_instance(rng, r_range=(2, 6), max_copies=3):
    """Frame of repeated basis vectors with a dyadic dual, in shuffled order.

    Every inner product involved is a small dyadic rational, so singular
    cases are exactly singular in floating point. The erasure set is a random
    subset of random size.
    """
    r = int(rng.integers(r_range[0], r_range[1] + 1))
    copies = rng.integers(1, max_copies + 1, size=r)
    xcols, zcols = [], []
    eye = np.eye(r)
    for m in range(r):
        c = int(copies[m])
        w = rng.choice(_DYADIC, size=c - 1)
        w = np.append(w, 1.0 - w.sum())
        group_z = [wi * eye[m] for wi in w]
        if c >= 2 and rng.random() < 0.4:
            # add a cancelling pair along another axis; the group still sums to e_m
            p = int(rng.integers(r))
            a, b = rng.choice(c, size=2, replace=False)
            amp = rng.choice([0.5, 1.0])
            group_z[a] = group_z[a] + amp * eye[p]
            group_z[b] = group_z[b] - amp * eye[p]
        xcols += [eye[m]] * c
        zcols += group_z
    n = len(xcols)
    order = rng.permutation(n)
    x = Frame(np.column_stack(xcols)[:, order])
    z = Frame(np.column_stack(zcols)[:, order])
    k = int(rng.integers(1, n))
    erasure = ErasureSet(rng.choice(n, size=k, replace=False), n)
    return x, z, erasure


def singular_supported_instance(rng, r_range=(5, 30), max_k=6):
    """Dual from a perturbation ``Q`` supported on ``E`` with ``A_{X,Q,E}`` singular.

    ``Q_E`` is chosen so that ``X_E^T Q_E - I`` has rank ``k - 1``.
    """
    r = int(rng.integers(r_range[0], r_range[1] + 1))
    n = int(rng.integers(r + 1, 3 * r + 1))
    k = int(rng.integers(1, min(max_k, n - r, r) + 1))
    x = gaussian_frame(rng, r, n)
    erasure = ErasureSet.first(k, n)
    xe = x.synthesis[:, :k]
    target = np.eye(k) + _rank_deficient(rng, k)
    q = np.zeros_like(x.synthesis)
    q[:, :k] = xe @ np.linalg.solve(xe.T @ xe, target)
    z = dual_from_perturbation(x, canonical_dual(x), q)
    return x, z, erasure, q


def _rank_deficient(rng, k):
    if k == 1:
        return np.zeros((1, 1))
    return rng.standard_normal((k, k - 1)) @ rng.standard_normal((k - 1, k))
