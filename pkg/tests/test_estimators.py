import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from mininfer.estimators import JaynesEstimator, MinEntanglementEstimator
from mininfer.exceptions import BoundaryMeansError, DimensionMismatchError
from mininfer.quantum import bell_overlaps, chsh_observable, pauli_product
from mininfer.scenarios import chsh_constraints

B = chsh_observable()


def test_params_and_clone():
    est = MinEntanglementEstimator(method="general", n_restarts=8, random_state=3)
    assert est.get_params() == {"method": "general", "n_restarts": 8, "random_state": 3, "cross_check": False}
    other = clone(est).set_params(random_state=5)
    assert other.random_state == 5 and est.random_state == 3
    assert JaynesEstimator().get_params()["allow_boundary"] is True


def test_jaynes_fit_predict():
    est = JaynesEstimator().fit([B], [1.3])
    assert est.predict([B]) == pytest.approx([1.3], abs=1e-10)
    assert est.score([B], [1.3]) >= -1e-10
    assert not est.summary_.separable and est.boundary_ is False
    assert est.lambda_.shape == (1,)
    # unseen observables are predicted from the inferred state
    assert est.predict([pauli_product("YY")])[0] == pytest.approx(np.real(np.trace(est.state_ @ pauli_product("YY"))))


def test_minent_fit_constraint_set():
    est = MinEntanglementEstimator().fit(chsh_constraints(1.3))
    assert np.allclose(bell_overlaps(est.state_), [0.0403806, 0.2298097, 0.5, 0.2298097], atol=1e-7)
    assert est.E_min_ == 0 and est.bell_reduced_


def test_boundary_handling():
    est = JaynesEstimator().fit([B], [2 * np.sqrt(2)])
    assert est.boundary_
    with pytest.raises(BoundaryMeansError):
        JaynesEstimator(allow_boundary=False).fit([B], [2 * np.sqrt(2)])


def test_validation():
    with pytest.raises(NotFittedError):
        JaynesEstimator().predict([B])
    with pytest.raises(ValueError):
        JaynesEstimator().fit([B], [1.0, 2.0])
    with pytest.raises(ValueError):
        JaynesEstimator().fit([B])
    with pytest.raises(ValueError):
        JaynesEstimator().fit(chsh_constraints(1.0), [1.0])
    est = JaynesEstimator().fit([B], [0.5])
    with pytest.raises(DimensionMismatchError):
        est.predict(np.eye(2))
