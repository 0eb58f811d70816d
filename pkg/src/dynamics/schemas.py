from pydantic import BaseModel, Field

from src.dynamics import constants


class ObservationModel(BaseModel):
    observed_index: int = Field(default=constants.OBSERVED_INDEX, ge=0)
    noise_variance: float = Field(default=constants.NOISE_VARIANCE, gt=0.0)

    model_config = {"frozen": True, "extra": "forbid"}


class LorenzParameters(BaseModel):
    sigma: float = constants.SIGMA
    rho: float = constants.RHO
    beta: float = constants.BETA

    model_config = {"frozen": True, "extra": "forbid"}
