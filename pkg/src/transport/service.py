import logging

import numpy as np
from scipy.spatial.distance import cdist

from src.ensembles.service import anomalies, importance_covariance
from src.transport import constants, exceptions
from src.transport.schemas import TransportPlan
from src.transport.simplex import TransportationSimplex
from src.utils import as_matrix, symmetric_sqrt, symmetrize

logger = logging.getLogger(__name__)


def cost_matrix(src_states, dst_states) -> np.ndarray:
    """Squared Euclidean distances between source columns and destination columns."""
    src_states = as_matrix(src_states)
    dst_states = as_matrix(dst_states)
    if src_states.shape[0] != dst_states.shape[0]:
        raise exceptions.ShapeMismatch(
            f"Source dimension {src_states.shape[0]} vs destination {dst_states.shape[0]}."
        )
    return cdist(src_states.T, dst_states.T, "sqeuclidean")


def check_marginals(cost: np.ndarray, row_marginals: np.ndarray, col_marginals: np.ndarray) -> None:
    if cost.ndim != 2 or cost.shape != (row_marginals.size, col_marginals.size):
        raise exceptions.ShapeMismatch(
            f"Cost {cost.shape} vs marginals ({row_marginals.size}, {col_marginals.size})."
        )
    if not np.all(np.isfinite(cost)):
        raise exceptions.NonFiniteCost()
    if np.any(row_marginals < 0) or np.any(col_marginals < 0):
        raise exceptions.NegativeMarginals()
    row_total, col_total = row_marginals.sum(), col_marginals.sum()
    if abs(row_total - col_total) > constants.MARGINAL_TOLERANCE * max(1.0, row_total):
        raise exceptions.UnbalancedMarginals(f"Rows carry {row_total!r}, columns {col_total!r}.")


def solve_transport(cost, row_marginals, col_marginals) -> TransportPlan:
    """Optimal basic solution of the transportation LP min Σ T∘C under both marginals."""
    cost = np.asarray(cost, dtype=float)
    row_marginals = np.asarray(row_marginals, dtype=float).ravel()
    col_marginals = np.asarray(col_marginals, dtype=float).ravel()
    check_marginals(cost, row_marginals, col_marginals)

    solver = TransportationSimplex(cost, row_marginals, col_marginals)
    matrix = solver.solve()
    logger.debug("Transport %s solved in %d pivots", cost.shape, solver.pivots)
    return TransportPlan(
        matrix=matrix,
        row_marginals=row_marginals,
        col_marginals=col_marginals,
        cost=float(np.sum(matrix * cost)),
        pivots=solver.pivots,
    )


def apply_transport(src_states, plan: TransportPlan) -> np.ndarray:
    src_states = as_matrix(src_states)
    if src_states.shape[1] != plan.matrix.shape[0]:
        raise exceptions.ShapeMismatch(
            f"{src_states.shape[1]} source members for a plan with {plan.matrix.shape[0]} rows."
        )
    column_sums = plan.matrix.sum(axis=0)
    if np.any(np.abs(column_sums - 1.0) > constants.COLUMN_SUM_TOLERANCE):
        raise exceptions.ColumnSumsNotOne(f"Worst column sums to {column_sums[np.argmax(np.abs(column_sums - 1.0))]!r}.")
    return src_states @ plan.matrix


def sample_covariance(states) -> np.ndarray:
    states = as_matrix(states)
    centered = anomalies(states)
    return symmetrize(centered @ centered.T / (states.shape[1] - 1.0))


def _analysis_row_basis(transported: np.ndarray, forecast: np.ndarray) -> np.ndarray:
    """n orthonormal rows, orthogonal to 1, spanning the transported anomalies.

    When the transported ensemble is rank deficient the basis is completed
    with forecast-anomaly directions orthogonal to what is already kept.
    """
    n = transported.shape[0]
    _, values, rows = np.linalg.svd(transported, full_matrices=False)
    basis = rows[values > constants.RANK_TOLERANCE * values[0]] if values[0] > 0.0 else rows[:0]
    needed = n - basis.shape[0]
    if needed == 0:
        return basis

    remainder = forecast - forecast @ basis.T @ basis
    _, remainder_values, remainder_rows = np.linalg.svd(remainder, full_matrices=False)
    forecast_scale = np.linalg.norm(forecast, 2)
    if remainder_values.size < needed or remainder_values[needed - 1] <= constants.RANK_TOLERANCE * forecast_scale:
        raise exceptions.CovarianceMatchFailed(
            f"Forecast anomalies leave {needed} of {n} analysis directions unspanned."
        )
    return np.vstack([basis, remainder_rows[:needed]])


def second_order_correction(src_states, plan: TransportPlan, posterior_weights) -> np.ndarray:
    """Correction D so that X(T + D) keeps the mean X w and has sample covariance Σ_{X^a}.

    The analysis anomalies are built as √(N−1) Σ_{X^a}^{1/2} R B, with B an
    orthonormal row basis of the transported anomalies A_Z and R the rotation
    bringing them closest to A_Z. D is the minimum-norm solution of
    A_X D = analysis anomalies − A_Z, so columns of T + D still sum to one.
    """
    src_states = as_matrix(src_states)
    posterior_weights = np.asarray(posterior_weights, dtype=float)
    size = src_states.shape[1]
    if plan.matrix.shape != (size, size):
        raise exceptions.NotSquare(f"Plan shape {plan.matrix.shape} for {size} members.")

    transported = src_states @ plan.matrix
    target = importance_covariance(src_states, posterior_weights)
    scale = max(1.0, float(np.linalg.norm(target)))
    if np.linalg.norm(sample_covariance(transported) - target) <= 1e-14 * scale:
        return np.zeros((size, size))

    forecast_anomalies = anomalies(src_states)
    transported_anomalies = anomalies(transported)
    basis = _analysis_row_basis(transported_anomalies, forecast_anomalies)
    target_sqrt = symmetric_sqrt(target)
    left, _, right = np.linalg.svd(target_sqrt @ transported_anomalies @ basis.T)
    analysis_anomalies = np.sqrt(size - 1.0) * target_sqrt @ left @ right @ basis

    correction, *_ = np.linalg.lstsq(forecast_anomalies, analysis_anomalies - transported_anomalies, rcond=None)

    values = np.linalg.svd(forecast_anomalies, compute_uv=False)
    conditioning = values[0] / max(values[-1], constants.RANK_TOLERANCE * values[0])
    residual = np.linalg.norm(sample_covariance(src_states @ (plan.matrix + correction)) - target)
    if residual > constants.CORRECTION_TOLERANCE * scale * max(1.0, conditioning):
        raise exceptions.CovarianceMatchFailed(
            f"Residual {residual:.3e} with forecast anomaly conditioning {conditioning:.3e}."
        )
    return correction
