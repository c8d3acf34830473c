"""Minimum-entanglement inference: least entanglement first, then maximum entropy."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bell import KKT_TOL, bell_reduce, is_bell_constraint_set, kkt_residual, maxent_box, min_max_weight
from .constraints import ConstraintSet, check_feasible
from .entanglement import ef_from_concurrence, ef_from_F, summarize
from .exceptions import BoundaryMeansError, ConsistencyError, InfeasibleError, NoConvergenceError
from .general import general_minent
from .jaynes import jaynes_solve
from .quantum import from_bell_probs
from .results import InferenceResult, MinentDiagnostics

METHODS = ("auto", "bell", "general")
VERDICTS = ("agree-separable", "agree-inseparable", "jaynes-overcommits")


def _bell_path(constraints: ConstraintSet) -> InferenceResult:
    system = bell_reduce(constraints)
    t_star, _ = min_max_weight(system)
    u = max(t_star, 0.5)
    p = maxent_box(system, u)
    kkt = kkt_residual(system, p, u)
    if kkt > KKT_TOL:
        raise NoConvergenceError(f"stage-2 KKT residual {kkt:.3e} exceeds {KKT_TOL:g}")
    rho = from_bell_probs(p)
    if not constraints.is_satisfied(rho):
        raise NoConvergenceError(f"minent state misses the means by {constraints.max_residual(rho):.3e}")
    diag = MinentDiagnostics(
        bell_reduced=True,
        E_min=ef_from_F(u),
        stage2_kkt_residual=kkt,
        max_weight_bound=u,
        bell_weights=p,
    )
    return InferenceResult(rho, "minent", diag, summarize(rho))


def _general_path(constraints: ConstraintSet, seed: int, n_restarts: int) -> InferenceResult:
    report = check_feasible(constraints, seed=seed)
    if not report:
        raise InfeasibleError(f"no state reproduces the means (best residual {report.residual:.3e})")
    try:
        center = jaynes_solve(constraints).state
    except BoundaryMeansError as exc:
        raise BoundaryMeansError(
            "feasible states are all rank deficient; the general path needs a full-rank feasible state",
            exc.result,
        ) from exc
    out = general_minent(constraints, center, seed=seed, n_restarts=n_restarts)
    if not constraints.is_satisfied(out.state):
        raise NoConvergenceError(f"minent state misses the means by {constraints.max_residual(out.state):.3e}")
    if not out.best_effort and out.kkt_residual > KKT_TOL:
        raise NoConvergenceError(f"stage-2 optimality gap {out.kkt_residual:.3e} exceeds {KKT_TOL:g}")
    diag = MinentDiagnostics(
        bell_reduced=False,
        E_min=ef_from_concurrence(out.C_min),
        stage2_kkt_residual=out.kkt_residual,
        best_effort=out.best_effort,
        restarts=out.restarts,
    )
    return InferenceResult(out.state, "minent", diag, summarize(out.state))


def minent_solve(constraints: ConstraintSet, method: str = "auto", seed: int = 0,
                 n_restarts: int = 64, cross_check: bool = False) -> InferenceResult:
    """Minimum-entanglement state of maximal entropy compatible with the means.

    ``method="auto"`` uses the exact Bell-simplex reduction whenever the
    constraints survive Bell-basis pinching and the numerical search otherwise.
    With ``cross_check`` the numerical search also runs on Bell constraint sets
    and ``diagnostics.oracle_gap`` records the difference in minimal E_f.
    """
    if method not in METHODS:
        raise ValueError(f"method must be one of {METHODS}, got {method!r}")
    if constraints.dim != 4:
        raise ValueError("minimum-entanglement inference is defined for two qubits")
    if method == "general" or (method == "auto" and not is_bell_constraint_set(constraints)):
        return _general_path(constraints, seed, n_restarts)
    result = _bell_path(constraints)
    if cross_check:
        other = _general_path(constraints, seed, n_restarts)
        result.diagnostics.oracle_gap = abs(other.diagnostics.E_min - result.diagnostics.E_min)
    return result


@dataclass
class Comparison:
    jaynes: InferenceResult
    minent: InferenceResult
    verdict: str
    jaynes_boundary: bool = False


def verdict_for(jaynes_separable: bool, minent_separable: bool) -> str:
    if jaynes_separable and minent_separable:
        return "agree-separable"
    if not jaynes_separable and not minent_separable:
        return "agree-inseparable"
    if minent_separable:
        return "jaynes-overcommits"
    # minent can never be more entangled than a feasible state that is separable
    raise ConsistencyError("maximum-entropy state is separable but the minimum-entanglement state is not")


def compare(constraints: ConstraintSet, method: str = "auto", seed: int = 0, n_restarts: int = 64) -> Comparison:
    """Run both schemes; on boundary means the Jaynes limit state is used."""
    boundary = False
    try:
        rj = jaynes_solve(constraints)
    except BoundaryMeansError as exc:
        if exc.result is None:
            raise
        rj, boundary = exc.result, True
    re = minent_solve(constraints, method=method, seed=seed, n_restarts=n_restarts)
    verdict = verdict_for(rj.summary.separable, re.summary.separable)
    return Comparison(rj, re, verdict, boundary)
