import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mininfer.exceptions import DomainError, InvalidDistributionError, InvalidStateError
from mininfer.quantum import (
    BELL_PROJECTORS,
    BELL_VECTORS,
    MAXIMALLY_MIXED,
    PHI_PLUS,
    PSI_MINUS,
    bell_overlaps,
    binary_entropy,
    check_density,
    chsh_observable,
    entropy,
    from_bell_probs,
    is_bell_diagonal,
    random_bell_probs,
    random_density,
    random_unitary,
    werner_state,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
UP_UP = np.diag([1.0, 0, 0, 0]).astype(complex)


def test_bell_basis_conventions():
    s = 1 / np.sqrt(2)
    assert np.allclose(BELL_VECTORS[PSI_MINUS], [0, s, -s, 0])
    assert np.allclose(BELL_VECTORS[PHI_PLUS], [s, 0, 0, s])
    for i in range(4):
        for j in range(4):
            expect = BELL_PROJECTORS[i] if i == j else 0
            assert np.max(np.abs(BELL_PROJECTORS[i] @ BELL_PROJECTORS[j] - expect)) <= 1e-14
        assert np.linalg.matrix_rank(BELL_PROJECTORS[i]) == 1
    assert np.max(np.abs(BELL_PROJECTORS.sum(axis=0) - np.eye(4))) <= 1e-14
    B = chsh_observable()
    assert np.allclose(B, 2 * np.sqrt(2) * (BELL_PROJECTORS[PHI_PLUS] - BELL_PROJECTORS[PSI_MINUS]))


def test_entropy_examples():
    assert entropy(BELL_PROJECTORS[PHI_PLUS]) == pytest.approx(0, abs=1e-12)
    assert entropy(MAXIMALLY_MIXED) == pytest.approx(np.log(4), abs=1e-12)
    rho = from_bell_probs([0.5, 1 / 6, 1 / 6, 1 / 6])
    assert entropy(rho) == pytest.approx(0.5 * np.log(2) + 0.5 * np.log(6), abs=1e-12)
    assert entropy(rho) == pytest.approx(1.242453, abs=1e-6)


def test_binary_entropy():
    assert binary_entropy(0.5) == pytest.approx(np.log(2), abs=1e-15)
    assert binary_entropy(0) == 0 and binary_entropy(1) == 0
    assert binary_entropy(0.75) == pytest.approx(0.562335, abs=1e-6)
    with pytest.raises(DomainError):
        binary_entropy(1.1)


@settings(max_examples=100, deadline=None)
@given(st.floats(0, 1))
def test_binary_entropy_symmetry(x):
    assert abs(binary_entropy(x) - binary_entropy(1 - x)) <= 1e-15


def test_bell_overlaps_examples():
    assert np.allclose(bell_overlaps(BELL_PROJECTORS[PHI_PLUS]), [0, 0, 1, 0])
    assert np.allclose(bell_overlaps(MAXIMALLY_MIXED), 0.25)
    assert np.allclose(bell_overlaps(werner_state(0.7)), [0.7, 0.1, 0.1, 0.1], atol=1e-14)


def test_from_bell_probs_examples():
    assert np.allclose(from_bell_probs([1, 0, 0, 0]), BELL_PROJECTORS[PSI_MINUS])
    assert np.allclose(from_bell_probs([0.25] * 4), MAXIMALLY_MIXED)
    with pytest.raises(InvalidDistributionError):
        from_bell_probs([0.5, 0.5, 0.5, -0.5])


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_bell_probs_round_trip(seed):
    p = random_bell_probs(seed)
    rho = from_bell_probs(p)
    assert np.max(np.abs(bell_overlaps(rho) - p)) <= 1e-12
    assert is_bell_diagonal(rho)


def test_is_bell_diagonal_examples():
    assert not is_bell_diagonal(UP_UP)
    assert is_bell_diagonal(MAXIMALLY_MIXED)


def test_check_density_clips_and_rejects():
    rho = from_bell_probs([0.5, 0.5, 0, 0]) + 1e-11 * (np.eye(4) - 4 * BELL_PROJECTORS[2]) / 4
    assert np.linalg.eigvalsh(check_density(rho))[0] >= 0
    with pytest.raises(InvalidStateError):
        check_density(np.diag([1.1, -0.1, 0, 0]))
    with pytest.raises(InvalidStateError):
        check_density(np.eye(4))


def test_random_density_ensemble():
    assert np.array_equal(random_density(7), random_density(7))
    acc = np.zeros((4, 4), dtype=complex)
    for k in range(10_000):
        rho = random_density((0, k))
        acc += rho
    check_density(random_density((0, 1)))
    assert np.max(np.abs(acc / 10_000 - MAXIMALLY_MIXED)) <= 0.02


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_random_density_valid(seed):
    rho = random_density(seed)
    check_density(rho)
    assert abs(bell_overlaps(rho).sum() - 1) <= 1e-10


def test_random_unitary():
    assert np.array_equal(random_unitary(3), random_unitary(3))
    total = 0.0
    for k in range(10_000):
        U = random_unitary((1, k), 2)
        assert np.max(np.abs(U @ U.conj().T - np.eye(2))) <= 1e-12
        total += abs(U[0, 0]) ** 2
    assert total / 10_000 == pytest.approx(0.5, abs=0.02)
    U4 = random_unitary(5, 4)
    assert np.max(np.abs(U4 @ U4.conj().T - np.eye(4))) <= 1e-12


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_entropy_unitary_invariance(seed):
    rho, U = random_density(seed), random_unitary(seed, 4)
    assert abs(entropy(U @ rho @ U.conj().T) - entropy(rho)) <= 1e-10
