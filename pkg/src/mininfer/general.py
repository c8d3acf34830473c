"""Minimum-entanglement inference without the Bell-diagonal reduction.

The feasible set is parameterised exactly: states on the affine slice
``Tr(rho A_i) = a_i`` are written as ``rho_c + sum_j x_j H_j`` around a
full-rank feasible centre ``rho_c``, with ``H_j`` an orthogonal basis of the
traceless directions that leave every mean unchanged.  Positivity is enforced
by radial retraction towards the centre, so the equality constraints never
need a penalty.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import null_space
from scipy.optimize import minimize

from .constraints import ConstraintSet
from .entanglement import _concurrence_unchecked
from .exceptions import NoConvergenceError
from .linalg import hermitize, partial_transpose
from .quantum import pauli_product, random_density

PAULI_BASIS = np.array([pauli_product(a + b) for a in "IXYZ" for b in "IXYZ"])
ZERO_CONCURRENCE = 1e-6
SLICE_MARGIN = 1e-6


@dataclass
class GeneralOutcome:
    state: np.ndarray
    C_min: float
    kkt_residual: float
    best_effort: bool
    restarts: int


class AffineSlice:
    """Feasible states around a positive definite centre."""

    def __init__(self, constraints: ConstraintSet, center: np.ndarray):
        self.center = hermitize(np.asarray(center, dtype=complex))
        G = np.real(np.einsum("kab,mba->km", constraints.observables, PAULI_BASIS[1:])) / 4
        N = null_space(G)
        self.H = np.einsum("mj,mab->jab", N, PAULI_BASIS[1:]) / 4
        self.HG = np.array([partial_transpose(h) for h in self.H])
        L = np.linalg.cholesky(self.center)
        Li = np.linalg.inv(L)
        self._whitened = np.einsum("ab,jbc,dc->jad", Li, self.H, Li.conj())

    @property
    def dim(self) -> int:
        return len(self.H)

    def affine(self, x) -> np.ndarray:
        return self.center + np.einsum("j,jab->ab", x, self.H)

    def coords(self, rho) -> np.ndarray:
        # Tr(H_j H_k) = delta_jk / 4
        return 4.0 * np.real(np.einsum("jab,ba->j", self.H, np.asarray(rho) - self.center))

    def retract(self, x) -> tuple[np.ndarray, float]:
        """State at ``x`` pulled back radially onto the PSD cone; also the gauge value."""
        M = np.einsum("j,jab->ab", x, self._whitened)
        t = max(0.0, -float(np.linalg.eigvalsh(hermitize(M))[0]))
        if t > 1.0:
            return self.center + np.einsum("j,jab->ab", x / t, self.H), t
        return self.affine(x), t


def _entropy_unchecked(rho) -> float:
    w = np.linalg.eigvalsh(hermitize(rho))
    w = w[w > 1e-300]
    return float(-np.sum(w * np.log(w)))


def _nelder_mead(f, x0, maxfev, polish_rounds=0, tol=1e-14):
    opts = dict(maxfev=maxfev, adaptive=True, xatol=1e-12, fatol=1e-16)
    res = minimize(f, x0, method="Nelder-Mead", options=opts)
    x, fx = res.x, res.fun
    for _ in range(polish_rounds):
        res = minimize(f, x, method="Nelder-Mead", options=opts)
        improved = fx - res.fun
        if res.fun < fx:
            x, fx = res.x, res.fun
        if improved < tol:
            break
    return x, fx


def minimize_concurrence(sl: AffineSlice, seed: int, n_restarts: int, maxfev: int = 800):
    """Random-restart simplex search for the least concurrent feasible state."""

    def f(x):
        rho, t = sl.retract(x)
        return _concurrence_unchecked(rho) + 1e-3 * max(0.0, t - 1.0) ** 2

    best_x, best_f, used = None, np.inf, 0
    for k in range(n_restarts):
        used = k + 1
        x0 = sl.coords(random_density((seed, k)))
        x, fx = _nelder_mead(f, x0, maxfev)
        if fx < best_f:
            best_x, best_f = x, fx
        if best_f == 0.0:
            break
    if best_f > 0.0:
        best_x, best_f = _nelder_mead(f, best_x, 3000, polish_rounds=40)
    rho, t = sl.retract(best_x)
    return rho, _concurrence_unchecked(rho), used


def _ppt_interior_point(sl: AffineSlice, rho_start):
    """Feasible state maximising min(lambda_min(rho), lambda_min(rho^T_B))."""

    def neg_margin(x):
        rho = sl.affine(x)
        return -min(np.linalg.eigvalsh(rho)[0], np.linalg.eigvalsh(hermitize(partial_transpose(rho)))[0])

    x, fx = _nelder_mead(neg_margin, sl.coords(rho_start), 3000, polish_rounds=3, tol=1e-10)
    return x, -fx


def _log_barrier_terms(X, dX):
    Xi = np.linalg.inv(X)
    A = np.einsum("ab,jbc->jac", Xi, dX)
    grad = -np.real(np.einsum("jaa->j", A))
    hess = np.real(np.einsum("jab,kba->jk", A, A))
    return grad, hess


def _is_pd(M) -> bool:
    try:
        np.linalg.cholesky(hermitize(M))
        return True
    except np.linalg.LinAlgError:
        return False


def maxent_ppt(sl: AffineSlice, x0, mu0: float = 1e-1, mu_end: float = 1e-12, max_newton: int = 100):
    """Maximise entropy over feasible PPT states with a log-det barrier path.

    Minimises ``-S(rho) - mu (ln det rho^T_B + ln det rho)`` by damped Newton
    with exact derivatives, shrinking ``mu`` by 10 each round.  Returns the
    state and a bound on the remaining optimality gap.
    """
    H, HG = sl.H, sl.HG
    x = np.asarray(x0, dtype=float).copy()

    def value(x, mu):
        rho = sl.affine(x)
        X = hermitize(partial_transpose(rho))
        if not (_is_pd(rho) and _is_pd(X)):
            return np.inf
        w = np.linalg.eigvalsh(hermitize(rho))
        wx = np.linalg.eigvalsh(X)
        return float(np.sum(w * np.log(w)) - mu * (np.sum(np.log(wx)) + np.sum(np.log(w))))

    mu = mu0
    decrement = np.inf
    while True:
        previous = np.inf
        for _ in range(max_newton):
            rho = hermitize(sl.affine(x))
            w, U = np.linalg.eigh(rho)
            Ht = np.einsum("ba,jbc,cd->jad", U.conj(), H, U)
            lw = np.log(w)
            grad = np.real(np.einsum("a,jaa->j", lw, Ht))
            dl = np.subtract.outer(lw, lw)
            dw = np.subtract.outer(w, w)
            close = np.abs(dw) <= 1e-14 * np.maximum(1.0, np.abs(w)[:, None])
            # divided differences of log on the spectrum
            f = np.where(close, 1.0 / np.sqrt(np.outer(w, w)), dl / np.where(close, 1.0, dw))
            hess = np.real(np.einsum("jab,kab,ab->jk", Ht.conj(), Ht, f))
            g1, h1 = _log_barrier_terms(hermitize(partial_transpose(rho)), HG)
            g2, h2 = _log_barrier_terms(rho, H)
            grad = grad + mu * (g1 + g2)
            hess = hess + mu * (h1 + h2)
            hess = 0.5 * (hess + hess.T)
            d = -np.linalg.solve(hess, grad)
            decrement = float(-grad @ d)
            if decrement < 1e-24 or (decrement < 1e-10 and decrement > 0.25 * previous):
                # converged, or stalled at the rounding floor
                break
            previous = decrement
            if decrement < 1e-10:
                # quadratic region: objective differences drop below rounding, take full steps
                if np.isfinite(value(x + d, mu)):
                    x = x + d
                    continue
                break
            f0 = value(x, mu)
            t = 1.0
            while value(x + t * d, mu) > f0 + 0.25 * t * float(grad @ d) + 1e-15 * abs(f0):
                t *= 0.5
                if t < 1e-14:
                    break
            if t < 1e-14:
                break
            x = x + t * d
        else:
            raise NoConvergenceError("barrier Newton iterations exhausted")
        if mu <= mu_end:
            break
        mu *= 0.1
    # 8 barrier eigenvalues: duality gap of the central point is at most 8 mu
    return sl.affine(x), 8 * mu + max(decrement, 0.0)


def maxent_on_concurrence_slice(sl: AffineSlice, rho_start, cap: float):
    """Best-effort entropy maximisation over feasible states with C <= cap."""
    x = sl.coords(rho_start)
    for K in (10.0, 100.0, 1000.0):

        def f(x, K=K):
            rho, t = sl.retract(x)
            excess = max(0.0, _concurrence_unchecked(rho) - cap)
            return -_entropy_unchecked(rho) + K * excess + 1e-3 * max(0.0, t - 1.0) ** 2

        x, _ = _nelder_mead(f, x, 3000, polish_rounds=40, tol=1e-13)
    rho, _ = sl.retract(x)
    return rho


def general_minent(constraints: ConstraintSet, center, seed: int = 0, n_restarts: int = 64) -> GeneralOutcome:
    sl = AffineSlice(constraints, center)
    rho1, C_min, used = minimize_concurrence(sl, seed, n_restarts)
    if C_min <= ZERO_CONCURRENCE:
        x0, margin = _ppt_interior_point(sl, rho1)
        if margin <= 1e-9:
            return GeneralOutcome(hermitize(rho1), 0.0, float("nan"), True, used)
        rho, gap = maxent_ppt(sl, x0)
        return GeneralOutcome(hermitize(rho), 0.0, gap, False, used)
    rho = maxent_on_concurrence_slice(sl, rho1, C_min + SLICE_MARGIN)
    return GeneralOutcome(hermitize(rho), C_min, float("nan"), True, used)
