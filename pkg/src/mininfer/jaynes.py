"""Maximum-entropy (Jaynes) inference.

The state is ``exp(-sum_i lam_i A_i) / Z`` with the multipliers found by
minimising the convex dual ``ln Z(lam) + lam . a``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .constraints import ConstraintSet, hermitian_to_real, independent_rows
from .entanglement import summarize
from .exceptions import BoundaryMeansError, InfeasibleError, NoConvergenceError
from .linalg import dagger, hermitize
from .results import InferenceResult, JaynesDiagnostics

TOL = 1e-12
MAX_ITER = 500
LAMBDA_MAX = 1e6
DRIFT_STEP = 1e-3
DRIFT_PATIENCE = 10
SUPPORT_TOL = 1e-9


@dataclass
class MaxentSolution:
    state: np.ndarray
    lambda_: np.ndarray
    log_Z: float
    iterations: int
    residual: float
    boundary: bool
    rank: int


def _dual(lam, A, a):
    K = np.einsum("k,kij->ij", lam, A) if len(lam) else np.zeros(A.shape[1:], dtype=complex)
    w, V = np.linalg.eigh(hermitize(K))
    shift = w[0]
    e = np.exp(-(w - shift))
    z = e.sum()
    p = e / z
    rho = hermitize((V * p) @ dagger(V))
    log_Z = float(np.log(z) - shift)
    expect = np.real(np.einsum("kij,ji->k", A, rho))
    return log_Z + float(lam @ a), a - expect, rho, expect, log_Z, p


def _covariance(A, rho, expect):
    # symmetrised covariance 1/2 Tr(rho {A_i, A_j}) - <A_i><A_j>
    T = np.real(np.einsum("iab,bc,jca->ij", A, rho, A))
    H = 0.5 * (T + T.T) - np.outer(expect, expect)
    return 0.5 * (H + H.T)


def _newton(A, a, tol, max_iter, lambda_max):
    p_count = len(a)
    lam = np.zeros(p_count)
    L, g, rho, expect, log_Z, w = _dual(lam, A, a)
    drift = 0
    direction = np.zeros(p_count)
    for it in range(1, max_iter + 1):
        residual = float(np.max(np.abs(g)))
        if np.max(np.abs(lam)) > lambda_max:
            if residual <= 1e-8:
                return lam, rho, log_Z, it, residual, w, "boundary", direction
            raise InfeasibleError("multipliers diverge while the means stay unmatched")
        H = _covariance(A, rho, expect)
        try:
            np.linalg.cholesky(H)
            d = np.linalg.solve(H, g)
        except np.linalg.LinAlgError:
            d = g.copy()
        step_norm = float(np.max(np.abs(d)))
        if residual <= tol:
            if step_norm <= DRIFT_STEP:
                return lam, rho, log_Z, it, residual, w, "ok", direction
            drift += 1
            if drift >= DRIFT_PATIENCE:
                return lam, rho, log_Z, it, residual, w, "boundary", d
        else:
            drift = 0
        # g = a - <A> is the dual gradient, so the Newton step is -H^-1 g
        d = -d
        slope = float(g @ d)
        if slope >= 0:
            d = -g
            slope = -float(g @ g)
        t = 1.0
        slack = 1e-13 * max(1.0, abs(L))
        for _ in range(60):
            trial = _dual(lam + t * d, A, a)
            if trial[0] <= L + 1e-4 * t * slope + slack:
                break
            t *= 0.5
        else:
            if residual <= tol * 100:
                return lam, rho, log_Z, it, residual, w, "ok", direction
            raise NoConvergenceError("line search failed in the dual Newton solver")
        direction = t * d
        lam = lam + direction
        L, g, rho, expect, log_Z, w = trial
    residual = float(np.max(np.abs(g)))
    if residual <= tol * 100:
        return lam, rho, log_Z, max_iter, residual, w, "ok", direction
    raise NoConvergenceError(f"dual Newton did not converge in {max_iter} iterations (residual {residual:.3e})")


def reduce_independent(A, a, tol=1e-8):
    """Drop observables that depend on the identity and the others; check consistency."""
    d = A.shape[1]
    vecs = np.array([hermitian_to_real(np.eye(d))] + [hermitian_to_real(M) for M in A])
    keep = independent_rows(vecs)
    kept_obs = [i - 1 for i in keep if i > 0]
    basis = vecs[keep]
    targets = np.concatenate([[1.0], a])  # Tr(rho I) = 1
    for j in range(len(a)):
        if j in kept_obs:
            continue
        coef, *_ = np.linalg.lstsq(basis.T, vecs[j + 1], rcond=None)
        implied = float(coef @ targets[keep])
        if abs(implied - a[j]) > tol:
            raise InfeasibleError("constraint means are inconsistent on the supporting face")
    return A[kept_obs], a[kept_obs]


def maxent(A, a, tol: float = TOL, max_iter: int = MAX_ITER, lambda_max: float = LAMBDA_MAX) -> MaxentSolution:
    """Maximum-entropy state for Tr(rho A_k) = a_k; handles means on the boundary.

    When the means force a rank-deficient state the multipliers run off to
    infinity.  The solver then restricts the problem to the support of the
    limiting state and solves it there, returning ``boundary=True``.
    """
    A = np.asarray(A, dtype=complex)
    a = np.asarray(a, dtype=float)
    d = A.shape[1] if A.ndim == 3 else A.shape[0]
    if A.ndim != 3 or len(a) == 0:
        rho = np.eye(d, dtype=complex) / d
        return MaxentSolution(rho, np.zeros(0), float(np.log(d)), 0, 0.0, False, d)
    lam, rho, log_Z, it, residual, w, status, direction = _newton(A, a, tol, max_iter, lambda_max)
    if status == "ok":
        return MaxentSolution(rho, lam, log_Z, it, residual, False, d)

    vals, vecs = np.linalg.eigh(rho)
    V = vecs[:, vals > SUPPORT_TOL]
    k = V.shape[1]
    if k == d:
        raise NoConvergenceError("multipliers drift but the state keeps full rank")
    A_red = np.einsum("ia,kij,jb->kab", V.conj(), A, V)
    A_keep, a_keep = reduce_independent(A_red, a)
    if len(a_keep):
        sub = maxent(A_keep, a_keep, tol, max_iter, lambda_max)
        rho_red = sub.state
        it += sub.iterations
    else:
        rho_red = np.eye(k, dtype=complex) / k
    rho = hermitize(V @ rho_red @ dagger(V))
    residual = float(np.max(np.abs(np.real(np.einsum("kij,ji->k", A, rho)) - a)))
    return MaxentSolution(rho, lam, log_Z, it, residual, True, k)


def jaynes_solve(constraints: ConstraintSet, tol: float = TOL, max_iter: int = MAX_ITER) -> InferenceResult:
    """Maximum-entropy state compatible with the constraint means.

    Raises :class:`BoundaryMeansError` when the means sit on the boundary of the
    achievable set; the exception's ``result`` holds the limit state.
    """
    if len(constraints) == 0:
        sol = maxent(np.zeros((0, constraints.dim, constraints.dim)), np.zeros(0))
    else:
        sol = maxent(constraints.observables, constraints.means, tol, max_iter)
    diag = JaynesDiagnostics(sol.lambda_, sol.log_Z, sol.iterations, sol.residual, sol.boundary, sol.rank)
    result = InferenceResult(sol.state, "jaynes", diag, summarize(sol.state))
    if sol.boundary:
        raise BoundaryMeansError(
            f"means lie on the boundary of the achievable set; limit state has rank {sol.rank}", result
        )
    if sol.residual > constraints.match_tolerance:
        raise NoConvergenceError(f"Jaynes residual {sol.residual:.3e} exceeds tolerance")
    return result
