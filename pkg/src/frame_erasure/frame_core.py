"""Finite frames in R^r, their operators, and the minimal redundancy condition.

A frame of ``N`` vectors in ``R^r`` is stored as its ``r x N`` synthesis matrix:
column ``n`` is the frame vector ``x_n``. Erasure indices are zero-based.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np
import scipy.linalg

from . import _linalg
from ._validation import check_matrix, check_same_shape, check_tol, check_vector
from .exceptions import DimensionMismatch, FrameError

DEFAULT_TOL = 1e-10

# power iteration settings for the spectral norm
SPECTRAL_RTOL = 1e-12
SPECTRAL_MAXITER = 5000


def _readonly(a):
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class Frame:
    """A finite family of vectors, held as an ``r x N`` synthesis matrix.

    Zero columns are allowed; whether the family spans ``R^r`` is decided by
    :func:`is_frame`, not by the constructor.
    """

    synthesis: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "synthesis", _readonly(check_matrix(self.synthesis, "synthesis")))

    @classmethod
    def from_vectors(cls, vectors) -> "Frame":
        """Build a frame from an ``N x r`` array-like whose rows are the vectors."""
        return cls(check_matrix(vectors, "vectors").T)

    @property
    def dim(self) -> int:
        return self.synthesis.shape[0]

    @property
    def count(self) -> int:
        return self.synthesis.shape[1]

    @property
    def vectors(self) -> np.ndarray:
        """``N x r`` view, one frame vector per row."""
        return self.synthesis.T

    def __len__(self):
        return self.count

    def __getitem__(self, n):
        return self.synthesis[:, n]

    def subframe(self, indices) -> "Frame":
        return Frame(self.synthesis[:, np.asarray(indices, dtype=np.intp)])

    def reduced(self, erasure: "ErasureSet") -> "Frame":
        """The family left after deleting the erased vectors (order preserved)."""
        erasure.check_count(self.count)
        return self.subframe(erasure.complement)

    def __repr__(self):
        return f"Frame(dim={self.dim}, count={self.count})"


def as_frame(obj) -> Frame:
    return obj if isinstance(obj, Frame) else Frame(obj)


@dataclass(frozen=True)
class ErasureSet:
    """Indices of lost coefficients within a family of ``count`` vectors.

    Indices are zero-based and stored sorted. ``permutation`` moves the erased
    positions to the front, keeping the survivors in their original order, so
    algorithms can work with ``E = {0, ..., k-1}``.
    """

    indices: tuple
    count: int
    permutation: np.ndarray = field(init=False, repr=False, compare=False)

    def __init__(self, indices: Iterable[int], count: int):
        idx = [int(i) for i in indices]
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate erasure indices: {sorted(idx)}")
        idx.sort()
        count = int(count)
        if not 1 <= len(idx) < count:
            raise ValueError(f"need 1 <= k < N, got k={len(idx)}, N={count}")
        if idx[0] < 0 or idx[-1] >= count:
            raise ValueError(f"erasure indices must lie in [0, {count - 1}], got {idx}")
        object.__setattr__(self, "indices", tuple(idx))
        object.__setattr__(self, "count", count)
        erased = np.array(idx, dtype=np.intp)
        keep = np.ones(count, dtype=bool)
        keep[erased] = False
        perm = np.concatenate([erased, np.flatnonzero(keep)])
        perm.setflags(write=False)
        object.__setattr__(self, "permutation", perm)

    @classmethod
    def first(cls, k: int, count: int) -> "ErasureSet":
        """``E = {0, ..., k-1}``."""
        return cls(range(k), count)

    @classmethod
    def from_one_based(cls, indices: Iterable[int], count: int) -> "ErasureSet":
        return cls([i - 1 for i in indices], count)

    @property
    def k(self) -> int:
        return len(self.indices)

    @property
    def erased(self) -> np.ndarray:
        return self.permutation[: self.k]

    @property
    def complement(self) -> np.ndarray:
        return self.permutation[self.k :]

    def check_count(self, count: int) -> None:
        if count != self.count:
            raise DimensionMismatch(f"erasure set built for N={self.count}, frame has N={count}")


@dataclass(frozen=True, eq=False)
class DualPair:
    """A frame together with a dual frame: ``Z @ X.T == I``."""

    frame: Frame
    dual: Frame
    tol: float = 1e-8

    def __post_init__(self):
        check_same_shape(self.frame.synthesis, self.dual.synthesis, "frame and dual")
        err = self.residual()
        if err > self.tol:
            raise FrameError(f"not a dual pair: |Z X^T - I|_max = {err:.3e}")

    def residual(self) -> float:
        r = self.frame.dim
        m = self.dual.synthesis @ self.frame.synthesis.T - np.eye(r)
        return float(np.max(np.abs(m))) if m.size else 0.0


@dataclass(frozen=True, eq=False)
class BesselPerturbation:
    """The sequence ``(q_n)`` parametrizing a dual frame; any finite ``r x N`` matrix."""

    q: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "q", _readonly(check_matrix(self.q, "q")))


def analysis(frame, h) -> np.ndarray:
    """Frame coefficients ``(<h, x_n>)_n``."""
    frame = as_frame(frame)
    h = check_vector(h, frame.dim, "h")
    return frame.synthesis.T @ h


def synthesis(frame, c) -> np.ndarray:
    """``sum_n c_n x_n``."""
    frame = as_frame(frame)
    c = check_vector(c, frame.count, "c")
    return frame.synthesis @ c


def frame_operator(frame) -> np.ndarray:
    """``S = sum_n x_n x_n^T``."""
    x = as_frame(frame).synthesis
    s = x @ x.T
    # symmetrize away round-off from the product
    return (s + s.T) / 2.0


def frame_bounds(frame, rtol=1e-10, maxiter=SPECTRAL_MAXITER):
    """Optimal frame bounds ``(A, B)``: extreme eigenvalues of the frame operator.

    ``B`` comes from power iteration on ``S`` and ``A`` from inverse iteration
    through a Cholesky factor of ``S``. A failed factorization means ``S`` is
    singular and ``A = 0`` is reported.
    """
    frame = as_frame(frame)
    s = frame_operator(frame)
    r = frame.dim
    upper = max(_linalg.dominant_eigenvalue(lambda v: s @ v, r, rtol, maxiter), 0.0)
    if upper == 0.0:
        return 0.0, 0.0
    try:
        factors = _linalg.cho_factor(s)
    except np.linalg.LinAlgError:
        return 0.0, upper
    inv_top = _linalg.dominant_eigenvalue(lambda v: _linalg.cho_solve(factors, v), r, rtol, maxiter)
    lower = 1.0 / inv_top if inv_top > 0 else 0.0
    return min(lower, upper), upper


def is_frame(frame, tol=DEFAULT_TOL) -> bool:
    """Relative gap test on singular values: ``sigma_min > tol * sigma_max``.

    Equivalently ``A > tol**2 * B`` for the frame bounds. Singular values come
    from an SVD of the synthesis matrix rather than from ``S``, whose rounding
    floor (about ``eps * B``) would hide exact rank loss on this scale. The
    threshold matches the scale of the invertibility tests on ``A_{X,Z,E}``.
    """
    tol = check_tol(tol)
    frame = as_frame(frame)
    if frame.count < frame.dim:
        return False
    sigma = scipy.linalg.svdvals(frame.synthesis, check_finite=False)
    return bool(sigma[0] > 0.0 and sigma[-1] > tol * sigma[0])


def mrc_check(frame, erasure: ErasureSet, tol=DEFAULT_TOL) -> bool:
    """Minimal redundancy condition: the surviving vectors still form a frame."""
    frame = as_frame(frame)
    return is_frame(frame.reduced(erasure), tol)


def spectral_norm(m) -> float:
    """Largest singular value by power iteration on ``M^T M``."""
    m = np.asarray(m, dtype=np.float64)
    if m.ndim != 2:
        raise DimensionMismatch(f"expected a matrix, got shape {m.shape}")
    if m.size == 0:
        return 0.0
    # iterate on the smaller Gram matrix side
    if m.shape[0] < m.shape[1]:
        m = m.T
    lam = _linalg.dominant_eigenvalue(lambda v: m.T @ (m @ v), m.shape[1], SPECTRAL_RTOL, SPECTRAL_MAXITER)
    return float(np.sqrt(max(lam, 0.0)))


# ---------------------------------------------------------------- FRM1 files

FRM1_MAGIC = "FRM1"


def write_frame(frame, path) -> None:
    """Write ``frame`` in the plain-text FRM1 format (one vector per line)."""
    frame = as_frame(frame)
    with open(path, "w", encoding="ascii") as fh:
        fh.write(f"{FRM1_MAGIC} {frame.dim} {frame.count}\n")
        for n in range(frame.count):
            fh.write(" ".join(repr(float(v)) for v in frame.synthesis[:, n]) + "\n")


def read_frame(path) -> Frame:
    with open(path, encoding="ascii") as fh:
        lines = [ln for ln in (raw.strip() for raw in fh) if ln]
    return parse_frame(lines)


def parse_frame(lines: Sequence[str]) -> Frame:
    if not lines:
        raise FrameError("empty FRM1 input")
    head = lines[0].split()
    if len(head) != 3 or head[0] != FRM1_MAGIC:
        raise FrameError(f"bad FRM1 header: {lines[0]!r}")
    try:
        r, n = int(head[1]), int(head[2])
    except ValueError:
        raise FrameError(f"bad FRM1 header: {lines[0]!r}") from None
    if r < 1 or n < 1:
        raise FrameError(f"FRM1 dimensions must be positive, got r={r}, N={n}")
    body = lines[1:]
    if len(body) != n:
        raise DimensionMismatch(f"FRM1 header declares {n} vectors, found {len(body)}")
    rows = []
    for lineno, line in enumerate(body, start=2):
        parts = line.split()
        if len(parts) != r:
            raise DimensionMismatch(f"line {lineno}: expected {r} values, got {len(parts)}")
        try:
            row = [float(p) for p in parts]
        except ValueError:
            raise FrameError(f"line {lineno}: non-numeric value") from None
        if not all(np.isfinite(row)):
            raise FrameError(f"line {lineno}: non-finite value")
        rows.append(row)
    return Frame.from_vectors(np.array(rows, dtype=np.float64).reshape(n, r))
