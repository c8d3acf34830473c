"""scikit-learn style wrappers around the two inference schemes.

``fit(X, y)`` takes a stack of observables and their means (or a ready
ConstraintSet with ``y=None``) and infers a state; ``predict(X)`` returns the
inferred state's expectation values of new observables.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .exceptions import BoundaryMeansError
from .jaynes import MAX_ITER, TOL, jaynes_solve
from .minent import minent_solve
from .validation import check_constraints, check_observables


class _StateEstimator(BaseEstimator):
    def _store(self, result, constraints):
        self.constraints_ = constraints
        self.result_ = result
        self.state_ = result.state
        self.summary_ = result.summary
        self.diagnostics_ = result.diagnostics
        self.entropy_ = result.entropy
        return self

    def predict(self, X) -> np.ndarray:
        """Expectation values Tr(state_ A) for each observable A in X."""
        check_is_fitted(self, "state_")
        X = check_observables(X, dim=self.state_.shape[0])
        return np.real(np.einsum("kij,ji->k", X, self.state_))

    def score(self, X, y) -> float:
        """Negative largest deviation between predicted and given means."""
        y = np.asarray(y, dtype=float).ravel()
        return -float(np.max(np.abs(self.predict(X) - y)))


class JaynesEstimator(_StateEstimator):
    """Maximum-entropy state reproducing the given means.

    With ``allow_boundary`` the limit state is kept when the means lie on the
    boundary of the achievable set (``boundary_`` is then True).
    """

    def __init__(self, tol: float = TOL, max_iter: int = MAX_ITER, allow_boundary: bool = True):
        self.tol = tol
        self.max_iter = max_iter
        self.allow_boundary = allow_boundary

    def fit(self, X, y=None):
        c = check_constraints(X, y)
        try:
            result = jaynes_solve(c, tol=self.tol, max_iter=self.max_iter)
            self.boundary_ = False
        except BoundaryMeansError as exc:
            if not self.allow_boundary or exc.result is None:
                raise
            result = exc.result
            self.boundary_ = True
        self.lambda_ = result.diagnostics.lambda_
        self.log_Z_ = result.diagnostics.log_Z
        return self._store(result, c)


class MinEntanglementEstimator(_StateEstimator):
    """Least-entangled state of maximal entropy reproducing the given means."""

    def __init__(self, method: str = "auto", n_restarts: int = 64, random_state: int = 0,
                 cross_check: bool = False):
        self.method = method
        self.n_restarts = n_restarts
        self.random_state = random_state
        self.cross_check = cross_check

    def fit(self, X, y=None):
        c = check_constraints(X, y)
        result = minent_solve(c, method=self.method, seed=self.random_state,
                              n_restarts=self.n_restarts, cross_check=self.cross_check)
        self.E_min_ = result.diagnostics.E_min
        self.bell_reduced_ = result.diagnostics.bell_reduced
        return self._store(result, c)
