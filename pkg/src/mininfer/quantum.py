"""Two-qubit states, Pauli operators and the Bell basis.

Bell index convention used everywhere in the package::

    0: PSI-  (singlet)   (|01> - |10>)/sqrt2
    1: PHI-              (|00> - |11>)/sqrt2
    2: PHI+              (|00> + |11>)/sqrt2
    3: PSI+              (|01> + |10>)/sqrt2

with |0> = spin up.  All entropies are in nats.
"""

from __future__ import annotations

import numpy as np

from .exceptions import DimensionMismatchError, DomainError, InvalidDistributionError, InvalidStateError
from .linalg import as_square, dagger, eigvalsh_desc, hermitian_defect, hermitize

PSI_MINUS, PHI_MINUS, PHI_PLUS, PSI_PLUS = 0, 1, 2, 3
BELL_LABELS = ("PSI-", "PHI-", "PHI+", "PSI+")
SQRT2 = np.sqrt(2.0)

STATE_TOL = 1e-10
PROB_TOL = 1e-12

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}

# rows are the Bell vectors in the computational basis |00>, |01>, |10>, |11>
BELL_VECTORS = np.array(
    [
        [0, 1, -1, 0],
        [1, 0, 0, -1],
        [1, 0, 0, 1],
        [0, 1, 1, 0],
    ],
    dtype=complex,
) / SQRT2
BELL_PROJECTORS = np.einsum("ki,kj->kij", BELL_VECTORS, BELL_VECTORS.conj())
# unitary whose columns are the Bell vectors
BELL_UNITARY = BELL_VECTORS.T.copy()

MAXIMALLY_MIXED = np.eye(4, dtype=complex) / 4


def pauli_product(label: str) -> np.ndarray:
    """Tensor product of single-qubit Paulis, e.g. ``"XZ"`` -> sigma_x (x) sigma_z."""
    out = np.ones((1, 1), dtype=complex)
    for ch in label.upper():
        try:
            out = np.kron(out, PAULI[ch])
        except KeyError:
            raise ValueError(f"unknown Pauli letter {ch!r}") from None
    return out


def chsh_observable() -> np.ndarray:
    return SQRT2 * (pauli_product("XX") + pauli_product("ZZ"))


def check_density(rho, dim: int | None = None, tol: float = STATE_TOL) -> np.ndarray:
    """Validate a density matrix and return a cleaned copy.

    Negative eigenvalues in ``[-tol, 0)`` are clipped to zero and the trace is
    renormalised; anything more negative is rejected.
    """
    rho = as_square(rho, "density matrix")
    if dim is not None and rho.shape != (dim, dim):
        raise DimensionMismatchError(f"expected a {dim}x{dim} density matrix, got {rho.shape}")
    if hermitian_defect(rho) > tol:
        raise InvalidStateError("density matrix is not Hermitian")
    tr = np.trace(rho).real
    if abs(tr - 1.0) > tol:
        raise InvalidStateError(f"density matrix has trace {tr!r}")
    rho = hermitize(rho)
    w, v = np.linalg.eigh(rho)
    if w[0] < -tol:
        raise InvalidStateError(f"density matrix has negative eigenvalue {w[0]:.3e}")
    if w[0] < 0:
        w = np.clip(w, 0.0, None)
        w = w / w.sum()
        rho = hermitize((v * w) @ dagger(v))
    return rho


def check_bell_probs(p, tol: float = PROB_TOL) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if p.shape != (4,) or not np.all(np.isfinite(p)):
        raise InvalidDistributionError(f"Bell weights must be 4 finite numbers, got {p!r}")
    if np.any(p < -tol) or abs(p.sum() - 1.0) > tol:
        raise InvalidDistributionError(f"not a probability vector: {p!r}")
    p = np.clip(p, 0.0, None)
    return p / p.sum()


def shannon_entropy(p) -> float:
    p = np.asarray(p, dtype=float)
    p = p[p > PROB_TOL]
    return float(-np.sum(p * np.log(p)))


def entropy(rho) -> float:
    """Von Neumann entropy in nats, with 0 ln 0 = 0."""
    return shannon_entropy(eigvalsh_desc(check_density(rho)))


def binary_entropy(x: float) -> float:
    if not (-PROB_TOL <= x <= 1 + PROB_TOL):
        raise DomainError(f"binary entropy argument {x!r} outside [0, 1]")
    x = min(max(float(x), 0.0), 1.0)
    out = 0.0
    for q in (x, 1.0 - x):
        if q > 0.0:
            out -= q * np.log(q)
    return float(out)


def to_bell_basis(rho) -> np.ndarray:
    """Matrix elements <psi_i| rho |psi_j> in the Bell index order."""
    rho = np.asarray(rho, dtype=complex)
    return dagger(BELL_UNITARY) @ rho @ BELL_UNITARY


def bell_overlaps(rho) -> np.ndarray:
    """Weights Tr(rho P_i) on the four Bell projectors."""
    return np.real(np.diag(to_bell_basis(check_density(rho, dim=4))))


def from_bell_probs(p) -> np.ndarray:
    p = check_bell_probs(p)
    return hermitize((BELL_UNITARY * p) @ dagger(BELL_UNITARY))


def is_bell_diagonal(rho, tol: float = 1e-9) -> bool:
    M = to_bell_basis(check_density(rho, dim=4))
    off = M - np.diag(np.diag(M))
    return bool(np.max(np.abs(off)) <= tol)


def werner_state(F: float) -> np.ndarray:
    """F P_0 + (1 - F)/3 (P_1 + P_2 + P_3)."""
    rest = (1.0 - F) / 3.0
    return from_bell_probs([F, rest, rest, rest])


def trace_distance(a, b) -> float:
    d = hermitize(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(d))))


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def random_density(seed, dim: int = 4) -> np.ndarray:
    """Hilbert-Schmidt random state: G G^H / Tr(G G^H), G complex Ginibre."""
    rng = _rng(seed)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = G @ dagger(G)
    return hermitize(rho / np.trace(rho).real)


def random_unitary(seed, dim: int = 2) -> np.ndarray:
    """Haar unitary from the QR decomposition of a Ginibre matrix, phases fixed."""
    if dim not in (2, 4):
        raise DimensionMismatchError(f"random_unitary supports dim 2 or 4, got {dim}")
    rng = _rng(seed)
    Z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / SQRT2
    Q, R = np.linalg.qr(Z)
    d = np.diag(R)
    return Q * (d / np.abs(d))


def random_bell_probs(seed) -> np.ndarray:
    """Uniform point on the probability simplex over the Bell basis."""
    return _rng(seed).dirichlet(np.ones(4))
