import logging
from typing import Sequence

import numpy as np
from scipy.special import logsumexp

from src.dynamics.schemas import ObservationModel
from src.dynamics.service import observation_operator
from src.ensembles import constants, exceptions
from src.ensembles.schemas import Ensemble
from src.utils import as_matrix, symmetrize

logger = logging.getLogger(__name__)


def anomalies(states) -> np.ndarray:
    """Deviations of every column from the unweighted column mean."""
    states = as_matrix(states)
    if states.shape[1] < 1:
        raise exceptions.EmptyEnsemble()
    return states - states.mean(axis=1, keepdims=True)


def weighted_mean(ens: Ensemble) -> np.ndarray:
    return ens.states @ ens.weights


def importance_covariance(states, weights) -> np.ndarray:
    """K/(K−1) · X (diag(w) − w wᵀ) Xᵀ for arbitrary nonnegative weights summing to one."""
    states = as_matrix(states)
    weights = np.asarray(weights, dtype=float)
    size = states.shape[1]
    if size < 2:
        raise exceptions.TooFewMembers(f"Got K={size}.")
    centered = states - (states @ weights)[:, np.newaxis]
    covariance = (centered * weights) @ centered.T
    return symmetrize(size / (size - 1.0) * covariance)


def weighted_covariance(ens: Ensemble) -> np.ndarray:
    return importance_covariance(ens.states, ens.weights)


def log_likelihoods(states, y: float, model: ObservationModel) -> np.ndarray:
    innovations = y - observation_operator(states, model)
    return -0.5 * innovations**2 / model.noise_variance


def normalize_log_weights(log_weights: np.ndarray) -> np.ndarray:
    """Exponentiate and normalize in log space; −inf entries become exact zeros."""
    log_weights = np.asarray(log_weights, dtype=float)
    if not np.any(np.isfinite(log_weights)):
        raise exceptions.WeightUnderflow()
    weights = np.exp(log_weights - logsumexp(log_weights))
    total = weights.sum()
    if not total > 0.0 or not np.isfinite(total):
        raise exceptions.WeightUnderflow()
    return weights / total


def likelihood_weights(ens: Ensemble, y: float, model: ObservationModel) -> np.ndarray:
    """Posterior importance weights w_j ∝ w^f_j · exp(−(y − Hx_j)² / 2R)."""
    with np.errstate(divide="ignore"):
        log_prior = np.log(ens.weights)
    weights = normalize_log_weights(log_prior + log_likelihoods(ens.states, y, model))
    if is_collapsed(weights):
        logger.debug("Weight collapse: max weight %.15f", weights.max())
    return weights


def is_collapsed(weights: np.ndarray) -> bool:
    return bool(np.max(weights) > constants.COLLAPSE_THRESHOLD)


def effective_sample_size(weights: np.ndarray) -> float:
    weights = np.asarray(weights, dtype=float)
    return float(1.0 / np.sum(weights**2))


def spatio_temporal_rmse(truth: Sequence, analysis_means: Sequence) -> float:
    truth = np.asarray(truth, dtype=float)
    analysis_means = np.asarray(analysis_means, dtype=float)
    if truth.size == 0 or analysis_means.size == 0:
        raise exceptions.EmptySequence()
    if truth.shape != analysis_means.shape:
        raise exceptions.SequenceMismatch(f"{truth.shape} vs {analysis_means.shape}.")
    return float(np.sqrt(np.mean((truth - analysis_means) ** 2)))
