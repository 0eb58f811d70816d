import math
from typing import List, Optional

from pydantic import BaseModel, Field, field_serializer, model_validator

from src.climatology.service import load_target
from src.dynamics import constants as dynamics_constants
from src.dynamics.schemas import ObservationModel
from src.filters import constants as filter_constants
from src.filters.constants import Variant
from src.filters.schemas import FilterConfig
from src.harness import exceptions
from src.shrinkage.constants import Family


class ExperimentConfig(BaseModel):
    experiment_id: str = "experiment"
    variant: Variant = Variant.ETPF
    tau: float = Field(default=filter_constants.DEFAULT_TAU, ge=0.0)
    M: int = Field(default=filter_constants.DEFAULT_SYNTHETIC_SIZE, ge=0)
    family: Family = Family.GAUSSIAN
    inflation_alpha: float = Field(default=1.0, gt=0.0)
    # bundled target labels or paths to matrix files
    target_files: List[str] = []
    observation: ObservationModel = ObservationModel()
    N: int = Field(default=20, ge=1)
    dt_obs: float = Field(default=dynamics_constants.DT_OBS, gt=0.0)
    substeps: int = Field(default=dynamics_constants.SUBSTEPS, ge=1)
    total_steps: int = Field(default=2_000, ge=1)
    spinup_steps: int = Field(default=200, ge=0)
    replicates: int = Field(default=1, ge=1)
    master_seed: int = Field(default=0, ge=0)
    output_path: Optional[str] = None
    n_jobs: Optional[int] = None
    gamma_override: Optional[float] = Field(default=None, ge=0.0, le=1.0)
    strict: bool = False

    model_config = {"extra": "forbid"}

    @model_validator(mode="after")
    def check_experiment(self) -> "ExperimentConfig":
        if self.spinup_steps >= self.total_steps:
            raise exceptions.SpinupTooLong(f"Got {self.spinup_steps} >= {self.total_steps}.")
        if self.variant is Variant.ETPF2 and self.N <= dynamics_constants.STATE_DIMENSION:
            raise exceptions.EnsembleTooSmall(f"ETPF2 needs N > {dynamics_constants.STATE_DIMENSION}, got {self.N}.")
        if self.variant is Variant.FETPF:
            if self.N < 3:
                raise exceptions.EnsembleTooSmall(f"FETPF needs N >= 3, got {self.N}.")
            if not self.target_files:
                raise exceptions.InvalidConfig("FETPF needs at least one entry in target_files.")
            if self.M < 2:
                raise exceptions.InvalidConfig(f"FETPF needs M >= 2, got {self.M}.")
        return self

    @property
    def is_shrinkage(self) -> bool:
        return self.variant is Variant.FETPF

    def filter_config(self) -> FilterConfig:
        targets = [load_target(reference) for reference in self.target_files] if self.is_shrinkage else []
        return FilterConfig(
            variant=self.variant,
            tau=self.tau,
            M=self.M,
            family=self.family,
            inflation_alpha=self.inflation_alpha,
            targets=targets,
            observation=self.observation,
            gamma_override=self.gamma_override,
        )


class RunResult(BaseModel):
    experiment_id: str
    variant: str
    N: int
    M: int
    alpha: float
    tau: float
    family: str
    replicate: int
    seed: int
    rmse: float = Field(ge=0.0)
    collapse_flags: int = Field(ge=0)
    diagnostic: Optional[str] = None

    @property
    def diverged(self) -> bool:
        return math.isinf(self.rmse)

    @field_serializer("rmse", when_used="json")
    def serialize_rmse(self, rmse: float):
        # JSON has no infinity; diverged runs travel as a string
        return rmse if math.isfinite(rmse) else "inf"


class SummaryRow(BaseModel):
    experiment_id: str
    variant: str
    N: int
    M: int
    alpha: float
    tau: float
    family: str
    mean_rmse: Optional[float] = None
    replicates: int
    divergences: int


class ExperimentReport(BaseModel):
    results: List[RunResult]
    summary: List[SummaryRow]
