import numpy as np
import pytest

from mininfer.constraints import ConstraintSet
from mininfer.quantum import chsh_observable

SQRT2 = np.sqrt(2.0)


def jaynes_closed_form(b):
    """Bell weights (PSI-, PHI-, PHI+, PSI+) of the maximum-entropy state for <B> = b."""
    s = b / (2 * SQRT2)
    return np.array([(1 - s) ** 2, 1 - s * s, (1 + s) ** 2, 1 - s * s]) / 4


def minent_closed_form(b):
    """Bell weights of the minimum-entanglement state for <B> = b, derived by hand.

    Below 4 - 2 sqrt2 the maximum-entropy state already has every weight <= 1/2.
    Up to sqrt2 the PHI+ weight sits at the cap 1/2; beyond it PSI- is emptied.
    """
    s = b / (2 * SQRT2)
    if b <= 4 - 2 * SQRT2:
        return jaynes_closed_form(b)
    if b <= SQRT2:
        return np.array([0.5 - s, s / 2, 0.5, s / 2])
    return np.array([0.0, (1 - s) / 2, s, (1 - s) / 2])


@pytest.fixture
def chsh():
    def make(b):
        return ConstraintSet.from_arrays([chsh_observable()], [b], ["B"])

    return make
