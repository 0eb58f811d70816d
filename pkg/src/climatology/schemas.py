from dataclasses import dataclass, field
from typing import List

import numpy as np
from pydantic import BaseModel


@dataclass(frozen=True)
class CovarianceSample:
    matrix: np.ndarray
    time_index: int


@dataclass
class KMeansResult:
    centroids: np.ndarray  # k×n×n
    labels: np.ndarray
    inertia: float
    inertia_history: list[float] = field(default_factory=list)


class Matrix(BaseModel):
    matrix: List[List[float]]


class Target(BaseModel):
    label: str
    dimension: int
    covariance: List[List[float]]

    @classmethod
    def from_target(cls, target) -> "Target":
        return cls(
            label=target.label,
            dimension=target.dimension,
            covariance=target.covariance.tolist(),
        )
