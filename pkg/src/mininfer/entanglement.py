"""Entanglement measures and separability for two-qubit states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .exceptions import DomainError
from .linalg import dagger, hermitize, partial_transpose, sqrtm_psd
from .quantum import (
    BELL_PROJECTORS,
    BELL_UNITARY,
    PAULI,
    PSI_MINUS,
    bell_overlaps,
    binary_entropy,
    check_density,
    is_bell_diagonal,
    random_unitary,
    to_bell_basis,
    werner_state,
)

PPT_TOL = 1e-10
SEPARABLE_F = 0.5
_YY = np.kron(PAULI["Y"], PAULI["Y"])


@dataclass(frozen=True)
class EntanglementSummary:
    F: float
    concurrence: float
    E_f: float
    E_r: Optional[float]
    separable: bool

    def as_dict(self) -> dict:
        return {
            "F": self.F,
            "concurrence": self.concurrence,
            "E_f": self.E_f,
            "E_r": self.E_r,
            "separable": self.separable,
        }


def pinch_bell(rho) -> np.ndarray:
    """Non-selective Bell measurement: sum_i P_i rho P_i."""
    rho = check_density(rho, dim=4)
    M = to_bell_basis(rho)
    return hermitize(BELL_UNITARY @ np.diag(np.diag(M)) @ dagger(BELL_UNITARY))


def twirl(rho) -> np.ndarray:
    """U (x) U twirl, evaluated exactly as the Werner projection at the same singlet weight."""
    rho = check_density(rho, dim=4)
    F = float(np.real(np.trace(rho @ BELL_PROJECTORS[PSI_MINUS])))
    return werner_state(F)


def twirl_montecarlo(rho, n_samples: int, seed: int = 0) -> np.ndarray:
    """Average of (U (x) U) rho (U (x) U)^H over Haar samples.

    Sample ``k`` draws its unitary from the derived seed ``(seed, k)``, so the
    average does not depend on evaluation order.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    rho = check_density(rho, dim=4)
    acc = np.zeros((4, 4), dtype=complex)
    for k in range(n_samples):
        U = random_unitary((seed, k), 2)
        W = np.kron(U, U)
        acc += W @ rho @ dagger(W)
    return hermitize(acc / n_samples)


def _concurrence_unchecked(rho: np.ndarray) -> float:
    tilde = _YY @ rho.conj() @ _YY
    s = sqrtm_psd(rho)
    ev = np.linalg.eigvalsh(hermitize(s @ tilde @ s))
    lam = np.sqrt(np.clip(ev, 0.0, None))[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def concurrence(rho) -> float:
    """Wootters concurrence max(0, l1 - l2 - l3 - l4)."""
    return min(1.0, _concurrence_unchecked(check_density(rho, dim=4)))


def ef_from_concurrence(C: float) -> float:
    if not (-1e-12 <= C <= 1 + 1e-12):
        raise DomainError(f"concurrence {C!r} outside [0, 1]")
    C = min(max(C, 0.0), 1.0)
    if C == 0.0:
        return 0.0
    return binary_entropy(0.5 * (1.0 + np.sqrt(max(0.0, 1.0 - C * C))))


def _check_weight(F: float) -> float:
    if not (-1e-12 <= F <= 1 + 1e-12):
        raise DomainError(f"weight {F!r} outside [0, 1]")
    return min(max(float(F), 0.0), 1.0)


def ef_from_F(F: float) -> float:
    """Entanglement of formation of a Bell-diagonal state with largest weight F."""
    F = _check_weight(F)
    if F <= SEPARABLE_F:
        return 0.0
    return binary_entropy(0.5 + np.sqrt(F * (1.0 - F)))


def er_from_F(F: float) -> float:
    """Relative entropy of entanglement of a Bell-diagonal state with largest weight F."""
    F = _check_weight(F)
    if F <= SEPARABLE_F:
        return 0.0
    return float(np.log(2.0) - binary_entropy(F))


def ef_general(rho) -> float:
    return ef_from_concurrence(concurrence(rho))


def is_separable_ppt(rho, tol: float = PPT_TOL) -> bool:
    rho = check_density(rho, dim=4)
    return bool(np.linalg.eigvalsh(hermitize(partial_transpose(rho)))[0] >= -tol)


def summarize(rho) -> EntanglementSummary:
    rho = check_density(rho, dim=4)
    F = float(np.max(bell_overlaps(rho)))
    C = concurrence(rho)
    E_r = er_from_F(F) if is_bell_diagonal(rho, 1e-9) else None
    return EntanglementSummary(
        F=F,
        concurrence=C,
        E_f=ef_from_concurrence(C),
        E_r=E_r,
        separable=is_separable_ppt(rho),
    )
