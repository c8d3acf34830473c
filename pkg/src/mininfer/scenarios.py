"""Worked examples: CHSH mean, local correlations, singlet weight; sweeps and thresholds."""

from __future__ import annotations

import math
from dataclasses import astuple, dataclass, fields
from typing import Callable, Optional

import numpy as np

from .constraints import ConstraintSet, Observable
from .entanglement import ef_general, er_from_F, pinch_bell, twirl
from .exceptions import BoundaryMeansError, ConsistencyError, NoSignChangeError, OutOfRangeError
from .jaynes import jaynes_solve
from .minent import Comparison, compare, minent_solve
from .quantum import (
    BELL_PROJECTORS,
    PSI_MINUS,
    SQRT2,
    bell_overlaps,
    chsh_observable,
    entropy,
    pauli_product,
    random_density,
    trace_distance,
)
from .results import InferenceResult

B_MAX = 2 * SQRT2
AGREEMENT_TOL = 1e-8
LEMMA_TOL = 1e-9
SCENARIOS = ("chsh", "local", "singlet")
PREDICATES = ("jaynes-inseparable", "minent-inseparable")


@dataclass(frozen=True)
class ScenarioRow:
    parameter: float
    jaynes_F: float
    jaynes_separable: bool
    minent_F: float
    minent_separable: bool
    E_f_jaynes: float
    E_f_minent: float
    E_r_jaynes: Optional[float]
    E_r_minent: Optional[float]
    verdict: str

    @classmethod
    def field_names(cls) -> list[str]:
        return [f.name for f in fields(cls)]

    def as_tuple(self) -> tuple:
        return astuple(self)

    @classmethod
    def from_comparison(cls, parameter: float, cmp: Comparison) -> "ScenarioRow":
        j, m = cmp.jaynes.summary, cmp.minent.summary
        return cls(float(parameter), j.F, j.separable, m.F, m.separable, j.E_f, m.E_f, j.E_r, m.E_r, cmp.verdict)


@dataclass(frozen=True)
class LemmaVerdict:
    samples: int
    ef_violations: int
    entropy_violations: int
    max_ef_gap: float
    max_entropy_gap: float
    seed: int
    er_violations: int = 0


def _domain(scenario: str) -> tuple[float, float]:
    if scenario not in SCENARIOS:
        raise ValueError(f"unknown scenario {scenario!r}; choose from {SCENARIOS}")
    return (0.0, 1.0) if scenario == "singlet" else (0.0, B_MAX)


def _check_range(scenario: str, x: float) -> float:
    lo, hi = _domain(scenario)
    x = float(x)
    if not (lo - 1e-12 <= x <= hi + 1e-12):
        name = "F" if scenario == "singlet" else "b"
        raise OutOfRangeError(f"{name} = {x!r} outside [{lo}, {hi:.10g}] for scenario {scenario}")
    return min(max(x, lo), hi)


def chsh_constraints(b: float) -> ConstraintSet:
    return ConstraintSet.from_pairs([(Observable(chsh_observable(), "B"), b)])


def local_constraints(b: float) -> ConstraintSet:
    pairs = [
        (Observable(SQRT2 * pauli_product("XX"), "sqrt2*XX"), b / 2),
        (Observable(SQRT2 * pauli_product("ZZ"), "sqrt2*ZZ"), b / 2),
    ]
    pairs += [(Observable(pauli_product(s), s), 0.0) for s in ("XI", "ZI", "IX", "IZ")]
    return ConstraintSet.from_pairs(pairs)


def singlet_constraints(F: float) -> ConstraintSet:
    return ConstraintSet.from_pairs([(Observable(BELL_PROJECTORS[PSI_MINUS], "P[PSI-]"), F)])


BUILDERS: dict[str, Callable[[float], ConstraintSet]] = {
    "chsh": chsh_constraints,
    "local": local_constraints,
    "singlet": singlet_constraints,
}


def _jaynes_or_limit(c: ConstraintSet) -> InferenceResult:
    try:
        return jaynes_solve(c)
    except BoundaryMeansError as exc:
        if exc.result is None:
            raise
        return exc.result


def scenario_comparison(scenario: str, x: float) -> Comparison:
    """Both inferences for a named scenario, with the scenario's own cross-checks."""
    x = _check_range(scenario, x)
    cmp = compare(BUILDERS[scenario](x))
    if scenario == "local":
        ref = _jaynes_or_limit(chsh_constraints(x))
        gap = trace_distance(cmp.jaynes.state, ref.state)
        if gap > AGREEMENT_TOL:
            raise ConsistencyError(f"local-data Jaynes state differs from the CHSH one by {gap:.3e}")
    elif scenario == "singlet":
        states = [cmp.jaynes.state, cmp.minent.state, twirl(cmp.jaynes.state)]
        gap = max(trace_distance(states[i], states[j]) for i in range(3) for j in range(i + 1, 3))
        if gap > AGREEMENT_TOL:
            raise ConsistencyError(f"singlet-weight states disagree by {gap:.3e}")
    return cmp


def scenario_chsh(b: float) -> ScenarioRow:
    return ScenarioRow.from_comparison(b, scenario_comparison("chsh", b))


def scenario_local(b: float) -> ScenarioRow:
    return ScenarioRow.from_comparison(b, scenario_comparison("local", b))


def scenario_singlet(F: float) -> ScenarioRow:
    return ScenarioRow.from_comparison(F, scenario_comparison("singlet", F))


def sweep_grid(start: float, stop: float, step: float) -> np.ndarray:
    if not step > 1e-6:
        raise OutOfRangeError(f"step must exceed 1e-6, got {step!r}")
    if stop < start:
        raise OutOfRangeError(f"empty range {start!r} -> {stop!r}")
    n = math.floor((stop - start) / step + 1e-9) + 1
    return start + step * np.arange(n)


def sweep_points(scenario: str, values) -> list[ScenarioRow]:
    """Scenario rows at the given parameter values, in the given order."""
    values = [_check_range(scenario, x) for x in values]
    rows = [ScenarioRow.from_comparison(x, scenario_comparison(scenario, x)) for x in values]
    if scenario != "singlet":
        for prev, cur in zip(rows, rows[1:]):
            if cur.parameter > prev.parameter and cur.jaynes_F < prev.jaynes_F - 1e-12:
                raise ConsistencyError(f"Jaynes weight decreases between b={prev.parameter} and b={cur.parameter}")
    return rows


def sweep(scenario: str, start: float, stop: float, step: float) -> list[ScenarioRow]:
    return sweep_points(scenario, sweep_grid(start, stop, step))


def _predicate(scenario: str, which: str) -> Callable[[float], bool]:
    build = BUILDERS[scenario]
    if which == "jaynes-inseparable":
        return lambda x: not _jaynes_or_limit(build(x)).summary.separable
    if which == "minent-inseparable":
        return lambda x: not minent_solve(build(x)).summary.separable
    raise ValueError(f"unknown predicate {which!r}; choose from {PREDICATES}")


def find_threshold(scenario: str, which: str, lo: Optional[float] = None, hi: Optional[float] = None,
                   tol: float = 1e-7) -> float:
    """Bisect for the parameter where the chosen state turns inseparable."""
    dlo, dhi = _domain(scenario)
    lo = dlo if lo is None else _check_range(scenario, lo)
    hi = dhi if hi is None else _check_range(scenario, hi)
    pred = _predicate(scenario, which)
    p_lo = pred(lo)
    if pred(hi) == p_lo:
        raise NoSignChangeError(f"{which} does not change on [{lo}, {hi}] for scenario {scenario}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if pred(mid) == p_lo:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def verify_lemma(samples: int, seed: int = 0, tol: float = LEMMA_TOL) -> LemmaVerdict:
    """Monte Carlo check that Bell pinching lowers E_f and raises entropy.

    Gaps are signed: ``max_ef_gap`` is the largest E_f(rho_B) - E_f(rho) and
    ``max_entropy_gap`` the largest S(rho) - S(rho_B); both should stay <= 0.
    ``er_violations`` counts samples with E_r(rho_B) > E_f(rho), which would
    contradict E_r(rho_B) <= E_r(rho) <= E_f(rho).
    """
    if samples < 1:
        raise ValueError("samples must be at least 1")
    ef_bad = s_bad = er_bad = 0
    ef_gap = s_gap = -np.inf
    for k in range(samples):
        rho = random_density((seed, k))
        rho_b = pinch_bell(rho)
        ef = ef_general(rho)
        d_ef = ef_general(rho_b) - ef
        d_s = entropy(rho) - entropy(rho_b)
        ef_gap, s_gap = max(ef_gap, d_ef), max(s_gap, d_s)
        ef_bad += d_ef > tol
        s_bad += d_s > tol
        er_bad += er_from_F(float(np.max(bell_overlaps(rho_b)))) > ef + tol
    return LemmaVerdict(samples, int(ef_bad), int(s_bad), float(ef_gap), float(s_gap), seed, int(er_bad))
