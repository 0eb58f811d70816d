from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.ensembles.schemas import Ensemble
from src.shrinkage import constants, exceptions
from src.utils import as_matrix, is_symmetric


@dataclass(frozen=True)
class ShrinkageTarget:
    """Symmetric positive-definite climatological covariance used as shrinkage target."""

    covariance: np.ndarray
    label: str = "target"

    def __post_init__(self) -> None:
        covariance = as_matrix(self.covariance)
        if not is_symmetric(covariance, atol=constants.SYMMETRY_TOLERANCE):
            raise exceptions.TargetNotSymmetric(f"Target {self.label!r}.")
        if np.linalg.eigvalsh(covariance)[0] <= 0.0:
            raise exceptions.TargetNotPositiveDefinite(f"Target {self.label!r}.")
        object.__setattr__(self, "covariance", covariance)

    @property
    def dimension(self) -> int:
        return self.covariance.shape[0]

    @property
    def is_trace_normalized(self) -> bool:
        return bool(abs(np.trace(self.covariance) - self.dimension) <= constants.TRACE_TOLERANCE)


@dataclass(frozen=True)
class AugmentedEnsemble:
    """Dynamic members followed by synthetic members, with the (1−γ)/N, γ/M weight split."""

    states: np.ndarray
    weights: np.ndarray
    dynamic_count: int
    synthetic_count: int
    gamma: float
    mu: float
    sphericity: Optional[float]
    target_label: str

    @property
    def ensemble(self) -> Ensemble:
        return Ensemble(states=self.states, weights=self.weights)

    @property
    def dynamic_states(self) -> np.ndarray:
        return self.states[:, : self.dynamic_count]

    @property
    def synthetic_states(self) -> np.ndarray:
        return self.states[:, self.dynamic_count :]
