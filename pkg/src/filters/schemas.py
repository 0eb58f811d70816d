from dataclasses import dataclass
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field, model_validator

from src.dynamics.schemas import ObservationModel
from src.ensembles.schemas import Ensemble
from src.filters import constants, exceptions
from src.filters.constants import Variant
from src.shrinkage.constants import Family
from src.shrinkage.schemas import AugmentedEnsemble, ShrinkageTarget
from src.transport.schemas import TransportPlan


class FilterConfig(BaseModel):
    variant: Variant = Variant.ETPF
    tau: float = Field(default=constants.DEFAULT_TAU, ge=0.0)
    M: int = Field(default=constants.DEFAULT_SYNTHETIC_SIZE, ge=0)
    family: Family = Family.GAUSSIAN
    inflation_alpha: float = Field(default=1.0, gt=0.0)
    targets: List[ShrinkageTarget] = []
    observation: ObservationModel = ObservationModel()
    # test hook: fixes γ instead of estimating it
    gamma_override: Optional[float] = Field(default=None, ge=0.0, le=1.0)

    model_config = {"arbitrary_types_allowed": True, "frozen": True, "extra": "forbid"}

    @model_validator(mode="after")
    def check_shrinkage(self) -> "FilterConfig":
        if self.variant is Variant.FETPF:
            if not self.targets:
                raise exceptions.MissingTargets()
            if self.M < 2:
                raise exceptions.TooFewSynthetic(f"Got M={self.M}.")
        return self


@dataclass(frozen=True)
class AnalysisResult:
    """Everything one assimilation step produced, kept for online checks and diagnostics."""

    ensemble: Ensemble
    posterior_weights: np.ndarray
    plan: TransportPlan
    source_states: np.ndarray  # prior support the plan transports from
    pre_rejuvenation: np.ndarray
    collapsed: bool
    effective_sample_size: float
    target_covariance: Optional[np.ndarray] = None  # ETPF2 only
    augmented: Optional[AugmentedEnsemble] = None  # FETPF only

    @property
    def expected_mean(self) -> np.ndarray:
        return self.source_states @ self.posterior_weights

    @property
    def analysis_mean(self) -> np.ndarray:
        return self.ensemble.states.mean(axis=1)
