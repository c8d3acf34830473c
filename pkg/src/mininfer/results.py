from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional, Union

import numpy as np

from .entanglement import EntanglementSummary
from .quantum import entropy


@dataclass
class JaynesDiagnostics:
    lambda_: np.ndarray
    log_Z: float
    iterations: int
    residual: float
    boundary: bool = False
    support_rank: int = 4

    def as_dict(self) -> dict:
        return {
            "lambda": [float(v) for v in self.lambda_],
            "log_Z": self.log_Z,
            "iterations": self.iterations,
            "residual": self.residual,
            "boundary": self.boundary,
            "support_rank": self.support_rank,
        }


@dataclass
class MinentDiagnostics:
    bell_reduced: bool
    E_min: float
    stage2_kkt_residual: float
    oracle_gap: Optional[float] = None
    max_weight_bound: Optional[float] = None
    best_effort: bool = False
    restarts: int = 0
    bell_weights: Optional[np.ndarray] = field(default=None, repr=False)

    def as_dict(self) -> dict:
        d = asdict(self)
        if self.bell_weights is not None:
            d["bell_weights"] = [float(v) for v in self.bell_weights]
        return d


@dataclass
class InferenceResult:
    state: np.ndarray
    method: str
    diagnostics: Union[JaynesDiagnostics, MinentDiagnostics]
    summary: EntanglementSummary

    @property
    def entropy(self) -> float:
        return entropy(self.state)
