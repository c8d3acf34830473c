"""Dense complex linear algebra for the 2x2 and 4x4 matrices of two-qubit problems.

Everything works on plain ``numpy`` arrays of dtype ``complex128``.
"""

from __future__ import annotations

from typing import Callable, NamedTuple

import numpy as np

from .exceptions import (
    DimensionMismatchError,
    DomainError,
    NoConvergenceError,
    NotHermitianError,
)

HERMITIAN_TOL = 1e-10
ZERO_EIG_TOL = 1e-12


class EigenDecomposition(NamedTuple):
    """Eigenvalues in descending order and the matching orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def dagger(M: np.ndarray) -> np.ndarray:
    return np.conj(M).T


def as_square(M, name: str = "matrix") -> np.ndarray:
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise DimensionMismatchError(f"{name} must be square, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise DomainError(f"{name} has non-finite entries")
    return M


def hermitian_defect(M: np.ndarray) -> float:
    return float(np.max(np.abs(M - dagger(M)))) if M.size else 0.0


def is_hermitian(M, tol: float = HERMITIAN_TOL) -> bool:
    return hermitian_defect(as_square(M)) <= tol


def hermitize(M: np.ndarray) -> np.ndarray:
    return 0.5 * (M + dagger(M))


def jacobi_eigh(M, max_sweeps: int = 200, tol: float = 1e-14) -> EigenDecomposition:
    """Cyclic Jacobi eigensolver for a complex Hermitian matrix.

    Each rotation first removes the phase of the pivot element, then applies
    the real symmetric Jacobi rotation that annihilates it.  Sweeps stop once
    the off-diagonal Frobenius norm drops below ``tol * max(1, ||M||_F)``.
    """
    A = hermitize(as_square(M))
    n = A.shape[0]
    V = np.eye(n, dtype=complex)
    scale = max(1.0, float(np.linalg.norm(A)))
    for _ in range(max_sweeps):
        off = np.linalg.norm(A - np.diag(np.diag(A)))
        if off < tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                theta = (A[q, q].real - A[p, p].real) / (2.0 * mag)
                if abs(theta) > 1e150:
                    t = 0.5 / theta
                else:
                    t = np.copysign(1.0, theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]])
                idx = [p, q]
                A[:, idx] = A[:, idx] @ rot
                A[idx, :] = dagger(rot) @ A[idx, :]
                V[:, idx] = V[:, idx] @ rot
    else:
        raise NoConvergenceError(f"Jacobi iteration did not converge in {max_sweeps} sweeps")
    values = np.real(np.diag(A))
    order = np.argsort(values)[::-1]
    return EigenDecomposition(values[order], V[:, order])


def hermitian_eig(M, tol: float = HERMITIAN_TOL, method: str = "lapack") -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    ``method="lapack"`` uses ``numpy.linalg.eigh``; ``method="jacobi"`` uses
    :func:`jacobi_eigh`.  Both enforce the same Hermiticity precondition.
    """
    M = as_square(M)
    defect = hermitian_defect(M)
    if defect > tol:
        raise NotHermitianError(f"matrix is not Hermitian (max |M - M^H| = {defect:.3e})")
    if method == "jacobi":
        return jacobi_eigh(M)
    if method != "lapack":
        raise ValueError(f"unknown eigensolver {method!r}")
    w, v = np.linalg.eigh(hermitize(M))
    return EigenDecomposition(w[::-1].copy(), v[:, ::-1].copy())


def eigvalsh_desc(M) -> np.ndarray:
    """Eigenvalues only, descending; skips the Hermiticity check (hot paths)."""
    return np.linalg.eigvalsh(hermitize(np.asarray(M, dtype=complex)))[::-1]


def matrix_function(M, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    """Apply a real scalar function to a Hermitian matrix through its spectrum.

    Eigenvalues within ``1e-12`` of zero are snapped to exactly zero before
    ``f`` is evaluated.
    """
    dec = hermitian_eig(M)
    vals = np.where(np.abs(dec.values) <= ZERO_EIG_TOL, 0.0, dec.values)
    with np.errstate(divide="ignore", invalid="ignore"):
        fv = np.asarray(f(vals), dtype=float)
    if fv.shape != vals.shape or not np.all(np.isfinite(fv)):
        raise DomainError("function is undefined on part of the spectrum")
    return hermitize((dec.vectors * fv) @ dagger(dec.vectors))


def expm_h(M) -> np.ndarray:
    return matrix_function(M, np.exp)


def logm_h(M) -> np.ndarray:
    """Matrix logarithm of a positive definite matrix."""
    dec = hermitian_eig(M)
    if dec.values[-1] <= ZERO_EIG_TOL:
        raise DomainError(f"logarithm needs eigenvalues > {ZERO_EIG_TOL:g}, got {dec.values[-1]:.3e}")
    return hermitize((dec.vectors * np.log(dec.values)) @ dagger(dec.vectors))


def sqrtm_psd(M) -> np.ndarray:
    w, v = np.linalg.eigh(hermitize(np.asarray(M, dtype=complex)))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ dagger(v)


def kron(A, B) -> np.ndarray:
    A = as_square(A, "A")
    B = as_square(B, "B")
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise DimensionMismatchError(f"kron expects two 2x2 factors, got {A.shape} and {B.shape}")
    return np.kron(A, B)


def partial_transpose(M, subsystem: int = 2) -> np.ndarray:
    """Transpose one tensor factor of a 4x4 two-qubit operator (subsystem 1 or 2)."""
    M = as_square(M)
    if M.shape != (4, 4):
        raise DimensionMismatchError(f"partial transpose needs a 4x4 matrix, got {M.shape}")
    T = M.reshape(2, 2, 2, 2)  # indices (i, k, j, l) for |ik><jl|
    if subsystem == 1:
        T = T.transpose(2, 1, 0, 3)
    elif subsystem == 2:
        T = T.transpose(0, 3, 2, 1)
    else:
        raise ValueError("subsystem must be 1 or 2")
    return T.reshape(4, 4).copy()
