"""Input validation helpers shared by the public operations."""
import numbers

import numpy as np

from .exceptions import DimensionMismatch


def check_matrix(a, name="matrix"):
    """Return ``a`` as a finite 2-D float64 array."""
    a = np.asarray(a, dtype=np.float64)
    if a.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    return a


def check_vector(v, length, name="vector"):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim != 1 or v.shape[0] != length:
        raise DimensionMismatch(f"{name} must have shape ({length},), got {v.shape}")
    if not np.all(np.isfinite(v)):
        raise ValueError(f"{name} contains NaN or Inf")
    return v


def check_tol(tol):
    if not isinstance(tol, numbers.Real) or not tol > 0 or not np.isfinite(tol):
        raise ValueError(f"tol must be a positive finite real, got {tol!r}")
    return float(tol)


def check_same_shape(a, b, what="frames"):
    if a.shape != b.shape:
        raise DimensionMismatch(f"{what} have different shapes: {a.shape} vs {b.shape}")
