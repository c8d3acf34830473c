import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from mininfer.entanglement import (
    concurrence,
    ef_from_concurrence,
    ef_from_F,
    ef_general,
    er_from_F,
    is_separable_ppt,
    pinch_bell,
    summarize,
    twirl,
    twirl_montecarlo,
)
from mininfer.exceptions import DomainError
from mininfer.quantum import (
    BELL_PROJECTORS,
    MAXIMALLY_MIXED,
    PSI_MINUS,
    bell_overlaps,
    entropy,
    from_bell_probs,
    random_bell_probs,
    random_density,
    random_unitary,
    trace_distance,
    werner_state,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
SINGLET = BELL_PROJECTORS[PSI_MINUS]
UP_UP = np.diag([1.0, 0, 0, 0]).astype(complex)
# H(1/2 + sqrt(3)/4) in 30-digit arithmetic (mpmath)
EF_075 = 0.245775366668471097537822860596


def test_pinch_examples():
    rho = from_bell_probs([0.1, 0.2, 0.3, 0.4])
    assert trace_distance(pinch_bell(rho), rho) <= 1e-14
    assert np.allclose(pinch_bell(UP_UP), from_bell_probs([0, 0.5, 0.5, 0]), atol=1e-14)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_pinch_properties(seed):
    rho = random_density(seed)
    rb = pinch_bell(rho)
    assert np.max(np.abs(bell_overlaps(rb) - bell_overlaps(rho))) <= 1e-14
    assert np.max(np.abs(pinch_bell(rb) - rb)) <= 1e-14
    assert entropy(rb) >= entropy(rho) - 1e-10


def test_twirl_examples():
    assert trace_distance(twirl(SINGLET), SINGLET) <= 1e-14
    assert trace_distance(twirl(MAXIMALLY_MIXED), MAXIMALLY_MIXED) <= 1e-14
    rho = from_bell_probs([0.6, 0.3, 0.1, 0.0])
    assert np.allclose(bell_overlaps(twirl(rho)), [0.6, 0.4 / 3, 0.4 / 3, 0.4 / 3], atol=1e-14)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_twirl_properties(seed):
    rho = random_density(seed)
    w = twirl(rho)
    assert abs(np.trace(w @ SINGLET) - np.trace(rho @ SINGLET)) <= 1e-14
    assert ef_general(w) <= ef_general(rho) + 1e-9


def test_twirl_montecarlo_converges():
    rho = random_density(11)
    # pilot runs with 10^4 samples stayed below 0.01; 0.05 leaves headroom
    assert np.max(np.abs(twirl_montecarlo(rho, 10_000, seed=0) - twirl(rho))) <= 0.05
    assert np.max(np.abs(twirl_montecarlo(SINGLET, 50, seed=4) - SINGLET)) <= 1e-12
    assert np.array_equal(twirl_montecarlo(rho, 1, seed=9), twirl_montecarlo(rho, 1, seed=9))


def test_concurrence_examples():
    assert concurrence(SINGLET) == pytest.approx(1, abs=1e-12)
    assert concurrence(MAXIMALLY_MIXED) == pytest.approx(0, abs=1e-12)
    assert concurrence(werner_state(0.75)) == pytest.approx(0.5, abs=1e-12)
    assert concurrence(UP_UP) == pytest.approx(0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_concurrence_bell_diagonal(seed):
    p = random_bell_probs(seed)
    assert concurrence(from_bell_probs(p)) == pytest.approx(max(0.0, 2 * p.max() - 1), abs=1e-10)


def test_measures_closed_forms():
    assert ef_from_F(0.5) == 0 and er_from_F(0.5) == 0
    assert ef_from_F(1) == pytest.approx(np.log(2), abs=1e-15)
    assert er_from_F(1) == pytest.approx(np.log(2), abs=1e-15)
    assert ef_from_F(0.75) == pytest.approx(EF_075, abs=1e-12)
    assert er_from_F(0.75) == pytest.approx(0.130812, abs=1e-6)
    F = np.linspace(0.5001, 1, 50)
    assert np.all(np.diff([ef_from_F(f) for f in F]) > 0)
    for bad in (-0.1, 1.1):
        with pytest.raises(DomainError):
            ef_from_F(bad)
        with pytest.raises(DomainError):
            er_from_F(bad)
    with pytest.raises(DomainError):
        ef_from_concurrence(1.5)


def test_ef_general_examples():
    assert ef_general(np.kron(random_density(1, 2), random_density(2, 2))) == pytest.approx(0, abs=1e-12)
    assert ef_general(SINGLET) == pytest.approx(np.log(2), abs=1e-12)
    assert ef_general(werner_state(0.75)) == pytest.approx(ef_from_F(0.75), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_ef_local_unitary_invariance(seed):
    rho = random_density(seed)
    W = np.kron(random_unitary((seed, 1)), random_unitary((seed, 2)))
    assert abs(ef_general(W @ rho @ W.conj().T) - ef_general(rho)) <= 1e-9


def test_ppt_examples():
    assert is_separable_ppt(MAXIMALLY_MIXED)
    assert not is_separable_ppt(SINGLET)
    assert is_separable_ppt(werner_state(0.5))
    assert not is_separable_ppt(werner_state(0.5 + 1e-6))


def test_summarize_examples():
    s = summarize(SINGLET)
    assert (s.F, s.separable) == (pytest.approx(1), False)
    assert s.concurrence == pytest.approx(1, abs=1e-12)
    assert s.E_f == pytest.approx(np.log(2), abs=1e-12) and s.E_r == pytest.approx(np.log(2), abs=1e-12)
    s = summarize(MAXIMALLY_MIXED)
    assert s.F == pytest.approx(0.25) and s.E_f == 0 and s.E_r == 0 and s.separable
    s = summarize(werner_state(0.75))
    assert s.F == pytest.approx(0.75) and s.concurrence == pytest.approx(0.5, abs=1e-12)
    assert s.E_f == pytest.approx(EF_075, abs=1e-12) and s.E_r == pytest.approx(0.130812, abs=1e-6)
    assert summarize(UP_UP).E_r is None


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_summary_invariants(seed):
    s = summarize(random_density(seed))
    assert (s.E_f == 0) == (s.concurrence <= 1e-12) or abs(s.E_f) <= 1e-12
    assert s.separable == is_separable_ppt(random_density(seed))
    assert 0 <= s.F <= 1
