import numpy as np
import pytest

from mininfer.exceptions import ConstraintSyntaxError, DependentObservablesError
from mininfer.grammar import parse_constraints
from mininfer.quantum import BELL_PROJECTORS, chsh_observable, pauli_product


def test_examples():
    c = parse_constraints("sqrt2*XX + sqrt2*ZZ = 1.3")
    assert np.allclose(c.observables[0], chsh_observable(), atol=1e-15) and c.means[0] == 1.3
    c = parse_constraints("P[PSI-] = 0.75")
    assert np.allclose(c.observables[0], BELL_PROJECTORS[0]) and c.means[0] == 0.75
    c = parse_constraints("XI = 0")
    assert np.allclose(c.observables[0], pauli_product("XI")) and c.means[0] == 0


def test_full_file():
    text = "# local data\n\n  sqrt2 * X X = 0.65\n1/sqrt2*ZZ-0.5*P[PHI+] = -1e-1\n  # end\n"
    c = parse_constraints(text)
    assert len(c) == 2
    expect = pauli_product("ZZ") / np.sqrt(2) - 0.5 * BELL_PROJECTORS[2]
    assert np.allclose(c.observables[1], expect) and c.means[1] == -0.1
    assert c.labels == ["sqrt2*XX", "1/sqrt2*ZZ-0.5*P[PHI+]"]


def test_signed_coefficients():
    c = parse_constraints("XX -1*ZZ = 0\n-2*YY + +3*ZX = .5")
    assert np.allclose(c.observables[0], pauli_product("XX") - pauli_product("ZZ"))
    assert np.allclose(c.observables[1], -2 * pauli_product("YY") + 3 * pauli_product("ZX"))


@pytest.mark.parametrize(
    "text, line, col",
    [
        ("XX = ", 1, 6),
        ("XX\n", 1, 3),
        ("XQ = 1", 1, 2),
        ("2 XX = 1", 1, 3),
        ("XX = 1 # no trailing comments", 1, 8),
        ("XX = 1\nP[PSI] = 0", 2, 1),
        ("XX + XX = 1", 1, 6),
        ("XX = 1\n\n XX = 0.5", 3, 2),
        ("sqrt2 XX = 1", 1, 7),
        ("XX = 1 2", 1, 8),
    ],
)
def test_errors_carry_position(text, line, col):
    with pytest.raises(ConstraintSyntaxError) as info:
        parse_constraints(text)
    assert (info.value.line, info.value.col) == (line, col)


def test_dependent_observables():
    with pytest.raises(DependentObservablesError):
        parse_constraints("XX = 1\n2*XX = 2")
    with pytest.raises(DependentObservablesError):
        parse_constraints("P[PSI-] + P[PSI+] + P[PHI-] + P[PHI+] = 1")


def test_empty_file():
    assert len(parse_constraints("# nothing\n\n")) == 0
