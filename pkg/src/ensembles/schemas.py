from dataclasses import dataclass

import numpy as np

from src.ensembles import constants, exceptions
from src.utils import as_matrix


@dataclass(frozen=True)
class Ensemble:
    """n×K particle states (columns are members) with a length-K probability vector."""

    states: np.ndarray
    weights: np.ndarray

    def __post_init__(self) -> None:
        states = as_matrix(self.states)
        weights = np.asarray(self.weights, dtype=float).ravel()
        if states.shape[1] < 1:
            raise exceptions.EmptyEnsemble()
        if weights.shape[0] != states.shape[1]:
            raise exceptions.InvalidWeights(
                f"Got {weights.shape[0]} weights for {states.shape[1]} members."
            )
        if not np.all(np.isfinite(states)):
            raise exceptions.NonFiniteStates()
        if np.any(weights < 0) or abs(weights.sum() - 1.0) > constants.WEIGHT_SUM_TOLERANCE:
            raise exceptions.InvalidWeights(f"Sum is {weights.sum()!r}.")
        object.__setattr__(self, "states", states)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def uniform(cls, states) -> "Ensemble":
        states = as_matrix(states)
        size = states.shape[1]
        return cls(states=states, weights=np.full(size, 1.0 / size))

    @property
    def dimension(self) -> int:
        return self.states.shape[0]

    @property
    def size(self) -> int:
        return self.states.shape[1]

    @property
    def is_uniform(self) -> bool:
        return bool(np.allclose(self.weights, 1.0 / self.size, rtol=0.0, atol=1e-12))
