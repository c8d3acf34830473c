"""Bell-constraint detection and the reduced problem on the Bell simplex.

For constraint sets that survive Bell-basis pinching, the minimum-entanglement
state is Bell-diagonal, so both optimisation stages run over four weights.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from scipy.optimize import linprog

from .constraints import ConstraintSet, hermitian_to_real, independent_rows
from .exceptions import BoundaryMeansError, InfeasibleError, NoConvergenceError, NotBellConstraintsError
from .jaynes import maxent, reduce_independent
from .quantum import BELL_UNITARY, shannon_entropy, to_bell_basis
from .linalg import dagger

DETECT_TOL = 1e-9
FEAS_TOL = 1e-12
KKT_TOL = 1e-8


def _pinch_operator(A: np.ndarray) -> np.ndarray:
    M = to_bell_basis(A)
    return BELL_UNITARY @ np.diag(np.diag(M)) @ dagger(BELL_UNITARY)


def is_bell_constraint_set(constraints: ConstraintSet, tol: float = DETECT_TOL) -> bool:
    """Sufficient test that the constraints survive pinching in the Bell basis.

    Each pinched observable must be a combination ``sum_j c_ij A_j + d_i I`` of
    the constraint observables, and the combination must reproduce ``a_i``.
    """
    if constraints.dim != 4:
        return False
    if len(constraints) == 0:
        return True
    A, a = constraints.observables, constraints.means
    basis = np.array([hermitian_to_real(M) for M in A] + [hermitian_to_real(np.eye(4))]).T
    targets = np.concatenate([a, [1.0]])
    for i in range(len(a)):
        D = hermitian_to_real(_pinch_operator(A[i]))
        coef, *_ = np.linalg.lstsq(basis, D, rcond=None)
        if np.max(np.abs(basis @ coef - D)) > tol:
            return False
        if abs(coef @ targets - a[i]) > tol:
            return False
    return True


@dataclass
class BellSystem:
    """Linear equations ``V p = a`` over the Bell weights (plus sum p = 1)."""

    V: np.ndarray
    a: np.ndarray

    def residual(self, p) -> float:
        p = np.asarray(p, dtype=float)
        r = [abs(p.sum() - 1.0)]
        if len(self.a):
            r.extend(np.abs(self.V @ p - self.a))
        return float(max(r))


def bell_reduce(constraints: ConstraintSet) -> BellSystem:
    if not is_bell_constraint_set(constraints):
        raise NotBellConstraintsError("constraint set is not invariant under Bell-basis pinching")
    V = np.array([np.real(np.diag(to_bell_basis(A))) for A in constraints.observables]).reshape(len(constraints), 4)
    # rounding noise from the basis change would otherwise read as a real coefficient
    V[np.abs(V) < 1e-13] = 0.0
    return BellSystem(V, constraints.means.copy())


def _equality_system(system: BellSystem) -> tuple[np.ndarray, np.ndarray]:
    """Independent rows of [V; 1] p = [a; 1]; raises if the system is inconsistent."""
    E = np.vstack([np.ones((1, 4)), system.V])
    e = np.concatenate([[1.0], system.a])
    keep = independent_rows(E)
    Ek, ek = E[keep], e[keep]
    sol, *_ = np.linalg.lstsq(Ek, ek, rcond=None)
    if np.max(np.abs(E @ sol - e)) > 1e-9:
        # dependent rows disagree with the independent ones
        coef, *_ = np.linalg.lstsq(Ek.T, E.T, rcond=None)
        if np.max(np.abs(coef.T @ ek - e)) > 1e-9:
            raise InfeasibleError("reduced Bell equations are inconsistent")
    return Ek, ek


def min_max_weight(system: BellSystem) -> tuple[float, np.ndarray]:
    """Solve min t s.t. p_i <= t, V p = a, sum p = 1, p >= 0 by vertex enumeration.

    Variables are (p_0..p_3, t).  Every vertex of the feasible polyhedron is
    obtained by activating enough inequalities to make the system square.
    """
    Ek, ek = _equality_system(system)
    m = len(ek)
    eq = np.hstack([Ek, np.zeros((m, 1))])
    # inequalities G z >= 0: p_i >= 0 and t - p_i >= 0
    G = np.vstack([np.hstack([np.eye(4), np.zeros((4, 1))]), np.hstack([-np.eye(4), np.ones((4, 1))])])
    need = 5 - m
    best_t, best_p = np.inf, None
    for active in itertools.combinations(range(8), need):
        M = np.vstack([eq, G[list(active)]])
        rhs = np.concatenate([ek, np.zeros(need)])
        if abs(np.linalg.det(M)) < 1e-12:
            continue
        z = np.linalg.solve(M, rhs)
        if np.min(G @ z) < -FEAS_TOL or np.max(np.abs(eq @ z - ek)) > 1e-10:
            continue
        if z[4] < best_t - 1e-15:
            best_t, best_p = float(z[4]), np.clip(z[:4], 0.0, None)
    if best_p is None:
        raise InfeasibleError("no Bell-diagonal state satisfies the constraints")
    return best_t, best_p


def _interior_margin(Vf: np.ndarray, r: np.ndarray) -> float:
    """max s such that some distribution q with Vf q = r has every q_i >= s."""
    k = Vf.shape[1]
    c = np.zeros(k + 1)
    c[-1] = -1.0
    A_eq = np.vstack([np.hstack([Vf, np.zeros((len(Vf), 1))]), np.concatenate([np.ones(k), [0.0]])])
    b_eq = np.concatenate([r, [1.0]])
    A_ub = np.hstack([-np.eye(k), np.ones((k, 1))])
    res = linprog(c, A_ub=A_ub, b_ub=np.zeros(k), A_eq=A_eq, b_eq=b_eq,
                  bounds=[(0, None)] * k + [(None, 1.0)], method="highs")
    return float(res.x[-1]) if res.status == 0 else -np.inf


def _face_candidate(system: BellSystem, status: tuple, u: float):
    """Max-entropy point with coordinates fixed at 0 / u and the rest free, or None."""
    p = np.zeros(4)
    free = [i for i, s in enumerate(status) if s == "free"]
    for i, s in enumerate(status):
        if s == "upper":
            p[i] = u
    mass = 1.0 - p.sum()
    rhs = system.a - system.V @ p if len(system.a) else np.zeros(0)
    if not free:
        if system.residual(p) <= FEAS_TOL:
            return p
        return None
    if mass <= FEAS_TOL:
        return None
    Vf = system.V[:, free] if len(system.a) else np.zeros((0, len(free)))
    blind = np.all(Vf == 0.0, axis=1)
    if np.any(np.abs(rhs[blind]) > 1e-10):
        return None
    Vf, rhs = Vf[~blind], rhs[~blind]
    # Vf q = rhs / mass with q a distribution over the free coordinates
    if _interior_margin(Vf, rhs / mass) <= 1e-10:
        # the face optimum would sit on a smaller face, which is enumerated separately
        return None
    obs = np.array([np.diag(row).astype(complex) for row in Vf]).reshape(len(Vf), len(free), len(free))
    try:
        obs, targets = reduce_independent(obs, rhs / mass)
        sol = maxent(obs, targets)
    except (InfeasibleError, NoConvergenceError, BoundaryMeansError):
        return None
    if sol.boundary:
        return None
    q = np.real(np.diag(sol.state))
    p[free] = mass * q
    if np.any(p > u + FEAS_TOL) or system.residual(p) > 1e-10:
        return None
    return p


def _face_entropy_bound(status: tuple, u: float) -> float:
    """Largest entropy any point of the face could have (ignoring the equalities)."""
    n_up = status.count("upper")
    n_free = status.count("free")
    mass = 1.0 - n_up * u
    if mass < -FEAS_TOL or (n_free == 0 and abs(mass) > FEAS_TOL):
        return -np.inf
    h = -n_up * u * np.log(u) if u > 0 else 0.0
    if n_free and mass > 0:
        h -= mass * np.log(mass / n_free)
    return float(h)


def maxent_box(system: BellSystem, u: float) -> np.ndarray:
    """Maximum Shannon entropy over {V p = a, sum p = 1, 0 <= p <= u}.

    Enumerates the 3^4 assignments of each weight to {0, u, free}; on each face
    the entropy maximiser is an exponential-family point found by the dual
    Newton solver.  Strict concavity makes the best feasible candidate the
    unique global optimum.  Faces are visited in order of an entropy upper
    bound so the search stops once no remaining face can win.
    """
    faces = [(_face_entropy_bound(st, u), st) for st in itertools.product(("free", "zero", "upper"), repeat=4)]
    faces.sort(key=lambda f: -f[0])
    best, best_h = None, -np.inf
    for bound, status in faces:
        if bound == -np.inf or bound < best_h - 1e-12:
            break
        p = _face_candidate(system, status, u)
        if p is None:
            continue
        h = shannon_entropy(p)
        if h > best_h + 1e-15:
            best, best_h = p, h
    if best is None:
        raise InfeasibleError("no Bell-diagonal state satisfies the constraints under the weight bound")
    return best


def kkt_residual(system: BellSystem, p: np.ndarray, u: float, tol: float = 1e-10) -> float:
    """KKT violation of the box-constrained entropy problem at ``p``.

    Stationarity is measured on the strictly interior weights.  Weights at the
    upper bound need a non-negative multiplier; when the equality multipliers
    are not unique the least-violating choice is used.  Weights at zero are
    forced by the equalities (the entropy gradient is unbounded there) and
    carry no sign condition.
    """
    p = np.asarray(p, dtype=float)
    free = [i for i in range(4) if tol < p[i] < u - tol]
    upper = [i for i in range(4) if p[i] >= u - tol and p[i] > tol]
    C = np.vstack([np.ones((1, 4)), system.V]) if len(system.a) else np.ones((1, 4))
    grad = -np.log(np.clip(p, 1e-300, None)) - 1.0
    if free:
        Cf = C[:, free].T
        mu, *_ = np.linalg.lstsq(Cf, grad[free], rcond=None)
        stationarity = float(np.max(np.abs(Cf @ mu - grad[free])))
        _, sv, vt = np.linalg.svd(Cf)
        rank = int(np.sum(sv > 1e-12))
        N = vt[rank:].T
    else:
        mu = np.zeros(C.shape[0])
        stationarity = 0.0
        N = np.eye(C.shape[0])
    if not upper:
        return stationarity
    # slack_i(z) = grad_i - C_i . (mu + N z) must be >= 0 for upper weights
    base = np.array([grad[i] - C[:, i] @ mu for i in upper])
    if N.shape[1] == 0:
        return max(stationarity, float(max(0.0, -base.min())))
    W = np.array([C[:, i] @ N for i in upper])
    k = N.shape[1]
    # minimise s subject to -(base - W z) <= s
    c = np.concatenate([np.zeros(k), [1.0]])
    A_ub = np.hstack([W, -np.ones((len(upper), 1))])
    res = linprog(c, A_ub=A_ub, b_ub=base, bounds=[(None, None)] * k + [(0, None)], method="highs")
    sign = float(res.x[-1]) if res.status == 0 else float(max(0.0, -base.min()))
    return max(stationarity, sign)
