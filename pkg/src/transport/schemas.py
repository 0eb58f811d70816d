from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TransportPlan:
    """Nonnegative K_src×K_dst coupling with its prescribed marginals."""

    matrix: np.ndarray
    row_marginals: np.ndarray
    col_marginals: np.ndarray
    cost: float = float("nan")
    pivots: int = 0

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape
