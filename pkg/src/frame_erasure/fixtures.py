"""Small explicit frames with known behaviour under erasures.

``e_m`` below is the m-th standard basis vector (1-based in the names, as in
the usual notation); erasure sets passed to the library are zero-based.
"""
import numpy as np

from .frame_core import Frame


def _basis(r, m):
    e = np.zeros(r)
    e[m] = 1.0
    return e


def mercedes_frame():
    """Three unit vectors at 120 degrees in R^2; a tight frame with bound 3/2."""
    s = np.sqrt(3.0) / 2.0
    return Frame(np.array([[1.0, -0.5, -0.5], [0.0, s, -s]]))


def repeated_first_frame(r=10):
    """``(e1, e1, e1, e2, ..., e_r)`` in R^r."""
    cols = [_basis(r, 0)] * 3 + [_basis(r, m) for m in range(1, r)]
    return Frame(np.column_stack(cols))


def _tail(r):
    return [_basis(r, m) for m in range(1, r)]


def half_zero_half_dual(r=10):
    """``(e1/2, 0, e1/2, e2, ..., e_r)``: a dual of :func:`repeated_first_frame`.

    ``E = {1, 3}`` has the minimal redundancy condition for the frame but not
    for this dual.
    """
    e1 = _basis(r, 0)
    return Frame(np.column_stack([e1 / 2, np.zeros(r), e1 / 2] + _tail(r)))


def unit_half_dual(r=10):
    """``(e1, -e1/2, e1/2, e2, ..., e_r)``: a dual of :func:`repeated_first_frame`.

    ``E = {1}`` keeps the redundancy condition yet ``I - e1 e1^T`` is singular;
    ``E = {1, 2}`` gives an invertible operator but the first rank-one step
    divides by ``1 - <z1, x1> = 0``.
    """
    e1 = _basis(r, 0)
    return Frame(np.column_stack([e1, -e1 / 2, e1 / 2] + _tail(r)))


# columns 0..3 are e1..e4, then a block of ten repeats, then e5..e_r
_T9_REPEATS = (0, 1, 2, 3, 0, 1, 2, 3, 0, 1)


def stop_at_three_frame(r=3000):
    """Frame of ``N = r + 10`` vectors: ``e1..e4``, ten repeats of them, ``e5..e_r``."""
    if r < 5:
        raise ValueError("frame needs r >= 5")
    cols = [_basis(r, m) for m in range(4)]
    cols += [_basis(r, m) for m in _T9_REPEATS]
    cols += [_basis(r, m) for m in range(4, r)]
    return Frame(np.column_stack(cols))


def stop_at_three_dual(r=3000):
    """A dual of :func:`stop_at_three_frame` that defeats both constructions for ``E = {1..4}``.

    Copies of ``e3`` other than the first get a zero dual vector, so the
    surviving dual vectors miss ``e3`` entirely and the rank-one iteration
    meets ``<u_3, x_3> = 1`` at its third step.
    """
    x = stop_at_three_frame(r).synthesis
    z = np.zeros_like(x)
    groups = {m: [n for n in range(x.shape[1]) if x[m, n] == 1.0] for m in range(4)}
    weights = {
        0: (0.5, 0.5, 0.0, 0.0),
        1: (0.5, 0.5, 0.0, 0.0),
        2: (1.0, 0.0, 0.0),
        3: (1 / 3, 1 / 3, 1 / 3),
    }
    for m, members in groups.items():
        for n, w in zip(members, weights[m]):
            z[m, n] = w
    z[:, 14:] = x[:, 14:]
    return Frame(z)
