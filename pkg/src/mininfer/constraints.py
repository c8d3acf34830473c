"""Measured data: observables paired with their exact mean values."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

import numpy as np
from scipy.optimize import minimize

from .exceptions import DependentObservablesError, DimensionMismatchError, NotHermitianError
from .linalg import as_square, hermitian_defect, hermitize
from .quantum import MAXIMALLY_MIXED

MATCH_TOL = 1e-10
RANK_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Observable:
    matrix: np.ndarray
    label: str = ""

    def __post_init__(self):
        M = as_square(self.matrix, "observable")
        if hermitian_defect(M) > 1e-10:
            raise NotHermitianError(f"observable {self.label!r} is not Hermitian")
        M = hermitize(M)
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def expectation(self, rho) -> float:
        return float(np.real(np.trace(np.asarray(rho) @ self.matrix)))


def hermitian_to_real(M: np.ndarray) -> np.ndarray:
    """Real coordinates of a Hermitian matrix (Frobenius inner product preserved)."""
    M = np.asarray(M)
    return np.concatenate([M.real.ravel(), M.imag.ravel()])


def independent_rows(vectors: np.ndarray, tol: float = RANK_TOL) -> list[int]:
    """Greedy indices of linearly independent rows (Gram-Schmidt on normalised rows)."""
    basis: list[np.ndarray] = []
    keep = []
    for i, v in enumerate(vectors):
        n = np.linalg.norm(v)
        if n == 0:
            continue
        r = v / n
        for b in basis:
            r = r - np.dot(b, r) * b
        # a second pass keeps the projection numerically orthogonal
        for b in basis:
            r = r - np.dot(b, r) * b
        rn = np.linalg.norm(r)
        if rn > tol:
            basis.append(r / rn)
            keep.append(i)
    return keep


@dataclass(frozen=True, eq=False)
class ConstraintSet:
    """Observables ``A_i`` with target means ``a_i`` such that Tr(rho A_i) = a_i.

    The observables must be linearly independent of each other and of the
    identity.
    """

    items: tuple = ()
    match_tolerance: float = MATCH_TOL

    def __post_init__(self):
        items = []
        for obs, mean in self.items:
            if not isinstance(obs, Observable):
                obs = Observable(np.asarray(obs, dtype=complex))
            mean = float(mean)
            if not np.isfinite(mean):
                raise ValueError(f"mean of {obs.label!r} is not finite")
            items.append((obs, mean))
        object.__setattr__(self, "items", tuple(items))
        if not items:
            return
        dims = {o.dim for o, _ in items}
        if len(dims) != 1:
            raise DimensionMismatchError(f"observables have mixed dimensions {sorted(dims)}")
        d = dims.pop()
        vecs = np.array([hermitian_to_real(np.eye(d))] + [hermitian_to_real(o.matrix) for o, _ in items])
        keep = independent_rows(vecs)
        if len(keep) != len(vecs):
            bad = next(i for i in range(len(vecs)) if i not in keep)
            label = items[bad - 1][0].label or f"#{bad}"
            if np.linalg.matrix_rank(vecs[[0, bad]], tol=RANK_TOL) < 2:
                raise DependentObservablesError(f"observable {label} is a multiple of the identity")
            raise DependentObservablesError(f"observable {label} depends linearly on the others")

    @classmethod
    def from_pairs(cls, pairs: Iterable, match_tolerance: float = MATCH_TOL) -> "ConstraintSet":
        return cls(tuple(pairs), match_tolerance)

    @classmethod
    def from_arrays(cls, observables, means, labels: Optional[Sequence[str]] = None,
                    match_tolerance: float = MATCH_TOL) -> "ConstraintSet":
        observables = np.asarray(observables, dtype=complex)
        means = np.asarray(means, dtype=float).ravel()
        if observables.ndim == 2:
            observables = observables[None]
        if len(observables) != len(means):
            raise ValueError(f"{len(observables)} observables but {len(means)} means")
        labels = labels or [""] * len(means)
        return cls(tuple((Observable(A, l), a) for A, a, l in zip(observables, means, labels)), match_tolerance)

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self) -> Iterator:
        return iter(self.items)

    @property
    def dim(self) -> int:
        return self.items[0][0].dim if self.items else 4

    @property
    def observables(self) -> np.ndarray:
        return np.array([o.matrix for o, _ in self.items]).reshape(len(self), self.dim, self.dim)

    @property
    def means(self) -> np.ndarray:
        return np.array([a for _, a in self.items], dtype=float)

    @property
    def labels(self) -> list[str]:
        return [o.label for o, _ in self.items]

    def expectations(self, rho) -> np.ndarray:
        rho = np.asarray(rho, dtype=complex)
        return np.real(np.einsum("kij,ji->k", self.observables, rho))

    def residuals(self, rho) -> np.ndarray:
        return self.expectations(rho) - self.means

    def max_residual(self, rho) -> float:
        return float(np.max(np.abs(self.residuals(rho)))) if len(self) else 0.0

    def is_satisfied(self, rho, tol: Optional[float] = None) -> bool:
        return self.max_residual(rho) <= (self.match_tolerance if tol is None else tol)


@dataclass
class FeasibilityReport:
    feasible: bool
    witness: Optional[np.ndarray]
    residual: float
    restarts: int = field(default=0)

    def __bool__(self) -> bool:
        return self.feasible


def _state_from_params(x: np.ndarray, d: int) -> tuple[np.ndarray, np.ndarray]:
    T = (x[: d * d] + 1j * x[d * d:]).reshape(d, d)
    S = T @ T.conj().T
    return T, S / np.trace(S).real


def _residual_objective(x, A, a, d):
    T, rho = _state_from_params(x, d)
    n = np.sum(np.abs(T) ** 2)
    r = np.real(np.einsum("kij,ji->k", A, rho)) - a
    # d<A>/dT* = (A - <A>) T / n ; objective sum r^2
    G = np.zeros((d, d), dtype=complex)
    for k in range(len(a)):
        G += r[k] * ((A[k] - (r[k] + a[k]) * np.eye(d)) @ T)
    G *= 4.0 / n
    return float(np.sum(r * r)), np.concatenate([G.real.ravel(), G.imag.ravel()])


def check_feasible(constraints: ConstraintSet, seed: int = 0, n_restarts: int = 64,
                   tol: float = 1e-6) -> FeasibilityReport:
    """Search for a density matrix reproducing the constraint means.

    Minimises the squared residual over rho = T T^H / Tr(T T^H) from random
    starts; the maximally mixed state is tried first.  Declares the set
    infeasible when the best residual stays above ``tol``.
    """
    d = constraints.dim
    if len(constraints) == 0:
        return FeasibilityReport(True, np.eye(d, dtype=complex) / d, 0.0)
    mixed = MAXIMALLY_MIXED if d == 4 else np.eye(d, dtype=complex) / d
    r0 = constraints.max_residual(mixed)
    if r0 <= 1e-12:
        return FeasibilityReport(True, mixed.copy(), r0)
    A, a = constraints.observables, constraints.means
    rng = np.random.default_rng(seed)
    best_x, best = None, np.inf
    for k in range(n_restarts):
        x0 = rng.standard_normal(2 * d * d)
        res = minimize(_residual_objective, x0, args=(A, a, d), jac=True, method="BFGS",
                       options={"gtol": 1e-14, "maxiter": 2000})
        _, rho = _state_from_params(res.x, d)
        r = constraints.max_residual(rho)
        if r < best:
            best, best_x = r, res.x
        if best <= 1e-9:
            break
    _, witness = _state_from_params(best_x, d)
    feasible = best <= tol
    return FeasibilityReport(feasible, hermitize(witness) if feasible else None, best, k + 1)
