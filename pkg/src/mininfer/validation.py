"""Input checking shared by the estimators."""

from __future__ import annotations

from typing import Optional

import numpy as np

from .constraints import ConstraintSet
from .exceptions import DimensionMismatchError, NotHermitianError
from .linalg import hermitian_defect


def check_observables(X, dim: Optional[int] = None) -> np.ndarray:
    """Return X as a complex (n, d, d) stack of Hermitian matrices."""
    X = np.asarray(X, dtype=complex)
    if X.ndim == 2:
        X = X[None]
    if X.ndim != 3 or X.shape[1] != X.shape[2]:
        raise DimensionMismatchError(f"expected a stack of square matrices, got shape {X.shape}")
    if dim is not None and X.shape[1] != dim:
        raise DimensionMismatchError(f"expected {dim}x{dim} observables, got {X.shape[1]}x{X.shape[2]}")
    if not np.all(np.isfinite(X)):
        raise ValueError("observables contain non-finite entries")
    for k, A in enumerate(X):
        if hermitian_defect(A) > 1e-10:
            raise NotHermitianError(f"observable {k} is not Hermitian")
    return X


def check_means(y, n: int) -> np.ndarray:
    y = np.asarray(y, dtype=float).ravel()
    if len(y) != n:
        raise ValueError(f"{n} observables but {len(y)} means")
    if not np.all(np.isfinite(y)):
        raise ValueError("means contain non-finite entries")
    return y


def check_constraints(X, y=None, match_tolerance: float = 1e-10) -> ConstraintSet:
    """Accept either a ConstraintSet or (observables, means) and return a ConstraintSet."""
    if isinstance(X, ConstraintSet):
        if y is not None:
            raise ValueError("means are already part of the ConstraintSet; pass y=None")
        return X
    if y is None:
        raise ValueError("means y are required when X is an array of observables")
    X = check_observables(X)
    return ConstraintSet.from_arrays(X, check_means(y, len(X)), match_tolerance=match_tolerance)
