import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.optimize import linprog, minimize

from mininfer.bell import BellSystem, bell_reduce, is_bell_constraint_set, kkt_residual, maxent_box, min_max_weight
from mininfer.constraints import ConstraintSet
from mininfer.entanglement import pinch_bell
from mininfer.exceptions import NotBellConstraintsError
from mininfer.quantum import BELL_PROJECTORS, PAULI, chsh_observable, pauli_product, random_bell_probs, random_density, shannon_entropy
from mininfer.scenarios import local_constraints

SQRT2 = np.sqrt(2)
YY = np.kron(PAULI["Y"], PAULI["Y"])


def test_detection_examples(chsh):
    assert is_bell_constraint_set(chsh(1.1))
    assert is_bell_constraint_set(local_constraints(1.3))
    assert not is_bell_constraint_set(ConstraintSet.from_arrays([pauli_product("XI")], [0.5]))
    with pytest.raises(NotBellConstraintsError):
        bell_reduce(ConstraintSet.from_arrays([pauli_product("XI")], [0.5]))


def test_reduce_examples(chsh):
    s = bell_reduce(chsh(1.0))
    assert np.allclose(s.V, [[-2 * SQRT2, 0, 2 * SQRT2, 0]], atol=1e-14)
    s = bell_reduce(ConstraintSet.from_arrays([BELL_PROJECTORS[0]], [0.7]))
    assert np.allclose(s.V, [[1, 0, 0, 0]], atol=1e-14) and s.a[0] == 0.7
    s = bell_reduce(local_constraints(1.2))
    r2 = SQRT2
    # PSI-, PHI-, PHI+, PSI+
    assert np.allclose(s.V[0], [-r2, -r2, r2, r2], atol=1e-14)
    assert np.allclose(s.V[1], [-r2, r2, r2, -r2], atol=1e-14)
    assert np.allclose(s.V[2:], 0, atol=1e-14) and np.allclose(s.a[2:], 0)
    assert np.allclose(s.a[:2], 0.6)


def _spin_flip_average(rho):
    """Zero local Bloch vectors while keeping the correlation tensor."""
    return (rho + YY @ rho.conj() @ YY) / 2


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31))
def test_pinching_consistency(seed):
    rho = random_density(seed)
    c = ConstraintSet.from_arrays([chsh_observable()], [np.real(np.trace(rho @ chsh_observable()))])
    assert c.max_residual(pinch_bell(rho)) <= 1e-10
    sym = _spin_flip_average(rho)
    loc = local_constraints(0.0)
    A = loc.observables
    cl = ConstraintSet.from_arrays(A, np.real(np.einsum("kij,ji->k", A, sym)))
    assert is_bell_constraint_set(cl)
    assert cl.max_residual(pinch_bell(sym)) <= 1e-10


def _random_system(seed, rows=1):
    rng = np.random.default_rng(seed)
    V = rng.uniform(-2, 2, size=(rows, 4))
    p = random_bell_probs(seed)
    return BellSystem(V, V @ p)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([1, 2]))
def test_min_max_weight_against_linprog(seed, rows):
    s = _random_system(seed, rows)
    t, p = min_max_weight(s)
    c = np.array([0, 0, 0, 0, 1.0])
    A_ub = np.hstack([np.eye(4), -np.ones((4, 1))])
    A_eq = np.vstack([np.hstack([s.V, np.zeros((rows, 1))]), [1, 1, 1, 1, 0]])
    ref = linprog(c, A_ub=A_ub, b_ub=np.zeros(4), A_eq=A_eq, b_eq=np.concatenate([s.a, [1]]),
                  bounds=[(0, None)] * 5, method="highs")
    assert t == pytest.approx(ref.fun, abs=1e-9)
    assert s.residual(p) <= 1e-10 and p.max() <= t + 1e-12


def _slsqp_box(s, u):
    cons = [{"type": "eq", "fun": lambda p: np.concatenate([s.V @ p - s.a, [p.sum() - 1]])}]
    best = None
    for k in range(8):
        x0 = random_bell_probs(100 + k)
        res = minimize(lambda p: -shannon_entropy(np.clip(p, 1e-300, None)), x0, method="SLSQP",
                       bounds=[(0, u)] * 4, constraints=cons, options={"ftol": 1e-15, "maxiter": 1000})
        if res.success and s.residual(res.x) < 1e-8 and (best is None or res.fun < best.fun):
            best = res
    return best


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31), st.sampled_from([1, 2]))
def test_maxent_box_against_slsqp(seed, rows):
    s = _random_system(seed, rows)
    t, _ = min_max_weight(s)
    u = max(t, 0.5)
    p = maxent_box(s, u)
    assert s.residual(p) <= 1e-10 and p.max() <= u + 1e-12 and p.min() >= 0
    assert kkt_residual(s, p, u) <= 1e-8
    ref = _slsqp_box(s, u)
    if ref is not None:
        # the exact optimum can only be better than a local solver's answer
        assert shannon_entropy(p) >= -ref.fun - 1e-9


def test_kkt_detects_suboptimal_point(chsh):
    s = bell_reduce(chsh(1.3))
    p = maxent_box(s, 0.5)
    assert kkt_residual(s, p, 0.5) <= 1e-12
    worse = p + 0.01 * np.array([0, 1, 0, -1])
    assert kkt_residual(s, worse, 0.5) > 1e-3
