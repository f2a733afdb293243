"""scikit-learn compatible wrapper around the reduced-dual constructions."""
import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .dual_construction import (
    canonical_dual,
    reduced_canonical_dual,
    reduced_dual_iterative,
    reduced_dual_matrix,
    reduced_dual_operator,
)
from .frame_core import DEFAULT_TOL, ErasureSet, Frame

METHODS = ("matrix", "operator", "iterative", "direct")


class ErasureRecovery(TransformerMixin, BaseEstimator):
    """Learn a dual of the reduced frame so signals survive coefficient erasures.

    ``fit`` takes the frame as an ``(N, r)`` array, one frame vector per row.
    ``transform`` maps signals ``(n_samples, r)`` to frame coefficients
    ``(n_samples, N)``; ``inverse_transform`` rebuilds the signals from those
    coefficients while reading only the non-erased columns, so erased entries
    may hold anything, NaN included.

    Parameters
    ----------
    erasures : sequence of int
        Zero-based indices of the coefficients that will be lost.
    dual : "canonical" or array of shape (N, r)
        Starting dual frame of the full frame, rows are dual vectors.
    method : {"matrix", "operator", "iterative", "direct"}
        How to build the reduced dual. "direct" ignores ``dual`` and inverts
        the reduced frame operator.
    tol : float
        Invertibility threshold shared by all methods.
    """

    def __init__(self, erasures=(0,), dual="canonical", method="matrix", tol=DEFAULT_TOL):
        self.erasures = erasures
        self.dual = dual
        self.method = method
        self.tol = tol

    def fit(self, X, y=None):
        vectors = check_array(X, dtype=np.float64)
        if self.method not in METHODS:
            raise ValueError(f"method must be one of {METHODS}, got {self.method!r}")
        frame = Frame.from_vectors(vectors)
        erasure = ErasureSet(self.erasures, frame.count)
        if isinstance(self.dual, str):
            if self.dual != "canonical":
                raise ValueError(f"dual must be 'canonical' or an array, got {self.dual!r}")
            dual = canonical_dual(frame, self.tol)
        else:
            dual = Frame.from_vectors(check_array(self.dual, dtype=np.float64))

        if self.method == "matrix":
            reduced = reduced_dual_matrix(frame, dual, erasure, self.tol)
        elif self.method == "operator":
            reduced = reduced_dual_operator(frame, dual, erasure, self.tol)
        elif self.method == "iterative":
            reduced = reduced_dual_iterative(frame, dual, erasure, self.tol).dual()
        else:
            reduced = reduced_canonical_dual(frame, erasure, self.tol)

        self.frame_ = frame
        self.dual_ = dual
        self.erasure_ = erasure
        self.reduced_dual_ = reduced
        self.n_features_in_ = frame.dim
        return self

    def transform(self, X):
        check_is_fitted(self, "reduced_dual_")
        signals = check_array(X, dtype=np.float64)
        if signals.shape[1] != self.frame_.dim:
            raise ValueError(f"expected {self.frame_.dim} features, got {signals.shape[1]}")
        return signals @ self.frame_.synthesis

    def inverse_transform(self, X):
        check_is_fitted(self, "reduced_dual_")
        coeffs = check_array(X, dtype=np.float64, ensure_all_finite=False)
        if coeffs.shape[1] != self.frame_.count:
            raise ValueError(f"expected {self.frame_.count} coefficients, got {coeffs.shape[1]}")
        kept = coeffs[:, self.erasure_.complement]
        if not np.all(np.isfinite(kept)):
            raise ValueError("non-erased coefficients contain NaN or Inf")
        return kept @ self.reduced_dual_.synthesis.T

    def score(self, X, y=None):
        """Negative mean squared reconstruction error after erasure."""
        signals = check_array(X, dtype=np.float64)
        rebuilt = self.inverse_transform(self.transform(signals))
        return -float(np.mean((rebuilt - signals) ** 2))
