import logging
from typing import Optional, Sequence

import numpy as np
from scipy import linalg

from src.ensembles.schemas import Ensemble
from src.ensembles.service import weighted_covariance
from src.shrinkage import exceptions
from src.shrinkage.constants import Family
from src.shrinkage.schemas import AugmentedEnsemble, ShrinkageTarget
from src.utils import symmetric_inverse_sqrt, symmetrize

logger = logging.getLogger(__name__)


def _whitened(target: ShrinkageTarget, sigma) -> np.ndarray:
    """C = P^{-1/2} Σ P^{-1/2}."""
    sigma = np.asarray(sigma, dtype=float)
    if sigma.shape != target.covariance.shape:
        raise exceptions.DimensionMismatch(f"Σ {sigma.shape} vs target {target.covariance.shape}.")
    inv_sqrt = symmetric_inverse_sqrt(target.covariance)
    if inv_sqrt is None:
        raise exceptions.TargetNotPositiveDefinite(f"Target {target.label!r}.")
    return symmetrize(inv_sqrt @ sigma @ inv_sqrt)


def sphericity(target: ShrinkageTarget, sigma) -> float:
    """Û(P, Σ) = (n tr(C²)/tr²(C) − 1)/(n − 1); zero iff C ∝ I."""
    n = target.dimension
    if n < 2:
        raise exceptions.DimensionTooSmall(f"Got n={n}.")
    whitened = _whitened(target, sigma)
    trace = np.trace(whitened)
    if trace <= 0.0:
        raise exceptions.ZeroSampleCovariance("Whitened covariance has zero trace.")
    value = (n * np.sum(whitened * whitened) / trace**2 - 1.0) / (n - 1.0)
    return float(max(value, 0.0))


def rblw_gamma(N: int, n: int, sphericity_value: float) -> float:
    if N < 3 or n < 2 or sphericity_value < 0:
        raise exceptions.InvalidRBLWArguments(f"Got N={N}, n={n}, U={sphericity_value}.")
    if sphericity_value == 0:
        return 1.0
    first = (N - 2.0) / (N * (N + 2.0))
    second = ((n + 1.0) * N - 2.0) / (sphericity_value * N * (N + 2.0) * (n - 1.0))
    return float(min(first + second, 1.0))


def mu_scale(target: ShrinkageTarget, sigma) -> float:
    return float(np.trace(_whitened(target, sigma)) / target.dimension)


def select_target(targets: Sequence[ShrinkageTarget], sigma) -> ShrinkageTarget:
    """The target with the largest sphericity mismatch; ties go to the earliest."""
    if not targets:
        raise exceptions.NoTargets()
    if len(targets) == 1:
        return targets[0]
    values = [sphericity(target, sigma) for target in targets]
    chosen = targets[int(np.argmax(values))]
    logger.debug("Target sphericities %s; selected %r", values, chosen.label)
    return chosen


def sample_synthetic_anomalies(
    target: ShrinkageTarget,
    mu: float,
    M: int,
    family: Family,
    inflation_alpha: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """M zero-mean anomalies drawn from N(0, μP) or the symmetric Laplace L(0, μP), scaled by α.

    Laplace columns are Gaussian columns scaled by √W with W ~ Exp(1), which
    keeps the covariance at μP.
    """
    if M < 2 or not mu > 0 or not inflation_alpha > 0:
        raise exceptions.InvalidSamplingArguments(f"Got M={M}, mu={mu}, alpha={inflation_alpha}.")
    try:
        factor = linalg.cholesky(mu * target.covariance, lower=True)
    except linalg.LinAlgError as error:
        raise exceptions.TargetNotPositiveDefinite(f"Target {target.label!r}: {error}.")

    samples = factor @ rng.standard_normal((target.dimension, M))
    if Family(family) is Family.LAPLACE:
        samples = samples * np.sqrt(rng.exponential(1.0, M))
    samples = samples - samples.mean(axis=1, keepdims=True)
    return inflation_alpha * samples


def build_augmented_ensemble(
    dynamic: Ensemble,
    targets: Sequence[ShrinkageTarget],
    M: int,
    family: Family,
    inflation_alpha: float,
    rng: np.random.Generator,
    gamma_override: Optional[float] = None,
) -> AugmentedEnsemble:
    N, n = dynamic.size, dynamic.dimension
    if N < 3:
        raise exceptions.TooFewDynamicMembers(f"Got N={N}.")
    sigma = weighted_covariance(dynamic)
    if not np.any(sigma):
        raise exceptions.ZeroSampleCovariance()

    target = select_target(targets, sigma)
    mu = mu_scale(target, sigma)
    spherical = sphericity(target, sigma) if n >= 2 else None
    if gamma_override is not None:
        gamma = float(gamma_override)
    elif spherical is None:
        raise exceptions.DimensionTooSmall(f"Got n={n}; fix gamma explicitly.")
    else:
        gamma = rblw_gamma(N, n, spherical)

    mean = dynamic.states.mean(axis=1, keepdims=True)
    synthetic = mean + sample_synthetic_anomalies(target, mu, M, family, inflation_alpha, rng)
    weights = np.concatenate([np.full(N, (1.0 - gamma) / N), np.full(M, gamma / M)])
    logger.debug("Shrinkage target=%s gamma=%.4f mu=%.4f U=%s", target.label, gamma, mu, spherical)
    return AugmentedEnsemble(
        states=np.hstack([dynamic.states, synthetic]),
        weights=weights,
        dynamic_count=N,
        synthetic_count=M,
        gamma=gamma,
        mu=mu,
        sphericity=spherical,
        target_label=target.label,
    )
