"""Maximum-entropy versus minimum-entanglement inference for two qubits."""

from .constraints import ConstraintSet, FeasibilityReport, Observable, check_feasible
from .entanglement import (
    EntanglementSummary,
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
from .estimators import JaynesEstimator, MinEntanglementEstimator
from .exceptions import (
    BoundaryMeansError,
    ConsistencyError,
    ConstraintSyntaxError,
    DependentObservablesError,
    InfeasibleError,
    MininferError,
    NoConvergenceError,
    NotBellConstraintsError,
    NoSignChangeError,
    OutOfRangeError,
)
from .bell import bell_reduce, is_bell_constraint_set
from .grammar import parse_constraints
from .jaynes import jaynes_solve
from .minent import Comparison, compare, minent_solve
from .quantum import (
    BELL_LABELS,
    bell_overlaps,
    chsh_observable,
    entropy,
    from_bell_probs,
    pauli_product,
    random_bell_probs,
    random_density,
    trace_distance,
    werner_state,
)
from .results import InferenceResult, JaynesDiagnostics, MinentDiagnostics
from .scenarios import (
    LemmaVerdict,
    ScenarioRow,
    find_threshold,
    scenario_chsh,
    scenario_local,
    scenario_singlet,
    sweep,
    verify_lemma,
)

__version__ = "0.1.0"
