"""Erase frame coefficients, reconstruct from the survivors, measure the error."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._validation import check_vector
from .exceptions import DimensionMismatch
from .frame_core import ErasureSet, as_frame, spectral_norm


@dataclass(frozen=True, eq=False)
class ErasedCoefficients:
    """Frame coefficients with the erased positions masked out.

    Absent entries are tracked by ``present`` (a boolean mask), never by a
    sentinel stored in ``values``; erased slots in ``values`` hold zero.
    """

    values: np.ndarray
    present: np.ndarray
    erasure: ErasureSet

    @property
    def surviving(self) -> np.ndarray:
        """Preserved coefficients, in increasing index order."""
        return self.values[self.erasure.complement]


def erase(c, erasure: ErasureSet) -> ErasedCoefficients:
    c = np.asarray(c, dtype=np.float64)
    if c.ndim != 1 or c.shape[0] != erasure.count:
        raise DimensionMismatch(f"coefficients must have shape ({erasure.count},), got {c.shape}")
    present = np.ones(erasure.count, dtype=bool)
    present[erasure.erased] = False
    values = np.where(present, c, 0.0)
    if not np.all(np.isfinite(values)):
        raise ValueError("preserved coefficients contain NaN or Inf")
    values.setflags(write=False)
    present.setflags(write=False)
    return ErasedCoefficients(values, present, erasure)


def reconstruct(ec: ErasedCoefficients, v) -> np.ndarray:
    """``sum_{n not in E} c_n v_n`` where ``v`` is a dual of the reduced frame.

    ``v`` must list its vectors in the increasing order of the surviving
    indices, as every reduced-dual constructor in this package does.
    """
    v = as_frame(v)
    expected = ec.erasure.count - ec.erasure.k
    if v.count != expected:
        raise DimensionMismatch(f"reduced dual has {v.count} vectors, {expected} coefficients survive")
    return v.synthesis @ check_vector(ec.surviving, expected, "surviving coefficients")


def duality_error(x_reduced, v) -> float:
    """Spectral norm of ``V X^T - I``, zero exactly when ``v`` is a dual of ``x_reduced``."""
    x_reduced, v = as_frame(x_reduced), as_frame(v)
    if x_reduced.synthesis.shape != v.synthesis.shape:
        raise DimensionMismatch(
            f"frame {x_reduced.synthesis.shape} and dual {v.synthesis.shape} differ in shape"
        )
    return spectral_norm(v.synthesis @ x_reduced.synthesis.T - np.eye(v.dim))


def recover(x, v, erasure: ErasureSet, h) -> np.ndarray:
    """Round trip: analyse ``h``, drop the erased coefficients, reconstruct."""
    x = as_frame(x)
    return reconstruct(erase(x.synthesis.T @ check_vector(h, x.dim, "h"), erasure), v)

