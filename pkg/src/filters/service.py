import numpy as np

from src.ensembles.schemas import Ensemble
from src.ensembles.service import (
    anomalies,
    effective_sample_size,
    importance_covariance,
    is_collapsed,
    likelihood_weights,
)
from src.filters import constants, exceptions
from src.filters.constants import Variant
from src.filters.schemas import AnalysisResult, FilterConfig
from src.shrinkage.service import build_augmented_ensemble
from src.transport.service import (
    apply_transport,
    cost_matrix,
    sample_covariance,
    second_order_correction,
    solve_transport,
)


def rejuvenation_matrix(N: int, tau: float, rng: np.random.Generator) -> np.ndarray:
    """B = √(τ/(N−1)) Π η Π with Π = I − 11ᵀ/N; B1 = 0 and 1ᵀB = 0."""
    if N < 2:
        raise exceptions.TooFewForRejuvenation(f"Got N={N}.")
    if tau < 0:
        raise exceptions.NegativeTau(f"Got tau={tau}.")
    eta = rng.standard_normal((N, N))
    eta = eta - eta.mean(axis=0, keepdims=True)
    eta = eta - eta.mean(axis=1, keepdims=True)
    return np.sqrt(tau / (N - 1.0)) * eta


def canonical_rejuvenation(
    analysis_states: np.ndarray,
    forecast_anomalies: np.ndarray,
    tau: float,
    rng: np.random.Generator,
) -> np.ndarray:
    """X^a + √(τ/(N−1)) A^f η (I − 11ᵀ/N); the column mean is untouched."""
    analysis_states = np.asarray(analysis_states, dtype=float)
    forecast_anomalies = np.asarray(forecast_anomalies, dtype=float)
    if forecast_anomalies.shape != analysis_states.shape:
        raise exceptions.AnomalyShape(f"{forecast_anomalies.shape} vs {analysis_states.shape}.")
    if tau < 0:
        raise exceptions.NegativeTau(f"Got tau={tau}.")
    if tau == 0:
        return analysis_states.copy()
    perturbation = forecast_anomalies @ rejuvenation_matrix(analysis_states.shape[1], tau, rng)
    return analysis_states + perturbation


def _square_transport(forecast: Ensemble, weights: np.ndarray):
    N = forecast.size
    cost = cost_matrix(forecast.states, forecast.states)
    plan = solve_transport(cost, N * weights, np.ones(N))
    return plan, apply_transport(forecast.states, plan)


def _finish(forecast: Ensemble, pre: np.ndarray, cfg: FilterConfig, rng, rejuvenate: bool) -> Ensemble:
    states = pre
    if rejuvenate and forecast.size >= 2:
        states = canonical_rejuvenation(pre, anomalies(forecast.states), cfg.tau, rng)
    if not np.all(np.isfinite(states)):
        raise exceptions.NonFiniteAnalysis()
    return Ensemble.uniform(states)


def etpf_analysis(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> AnalysisResult:
    weights = likelihood_weights(forecast, y, cfg.observation)
    plan, pre = _square_transport(forecast, weights)
    return AnalysisResult(
        ensemble=_finish(forecast, pre, cfg, rng, rejuvenate=True),
        posterior_weights=weights,
        plan=plan,
        source_states=forecast.states,
        pre_rejuvenation=pre,
        collapsed=is_collapsed(weights),
        effective_sample_size=effective_sample_size(weights),
    )


def etpf2_analysis(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> AnalysisResult:
    if forecast.size <= forecast.dimension:
        raise exceptions.TooFewForSecondOrder(f"Got N={forecast.size}, n={forecast.dimension}.")
    weights = likelihood_weights(forecast, y, cfg.observation)
    plan, transported = _square_transport(forecast, weights)
    correction = second_order_correction(forecast.states, plan, weights)
    pre = transported + forecast.states @ correction
    return AnalysisResult(
        ensemble=_finish(forecast, pre, cfg, rng, rejuvenate=True),
        posterior_weights=weights,
        plan=plan,
        source_states=forecast.states,
        pre_rejuvenation=pre,
        collapsed=is_collapsed(weights),
        effective_sample_size=effective_sample_size(weights),
        target_covariance=importance_covariance(forecast.states, weights),
    )


def fetpf_analysis(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> AnalysisResult:
    augmented = build_augmented_ensemble(
        forecast,
        cfg.targets,
        cfg.M,
        cfg.family,
        cfg.inflation_alpha,
        rng,
        gamma_override=cfg.gamma_override,
    )
    weights = likelihood_weights(augmented.ensemble, y, cfg.observation)
    N = forecast.size
    cost = cost_matrix(augmented.states, forecast.states)
    plan = solve_transport(cost, N * weights, np.ones(N))
    pre = apply_transport(augmented.states, plan)
    return AnalysisResult(
        ensemble=_finish(forecast, pre, cfg, rng, rejuvenate=False),
        posterior_weights=weights,
        plan=plan,
        source_states=augmented.states,
        pre_rejuvenation=pre,
        collapsed=is_collapsed(weights),
        effective_sample_size=effective_sample_size(weights),
        augmented=augmented,
    )


ANALYSES = {
    Variant.ETPF: etpf_analysis,
    Variant.ETPF2: etpf2_analysis,
    Variant.FETPF: fetpf_analysis,
}


def assimilate(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> AnalysisResult:
    return ANALYSES[cfg.variant](forecast, y, cfg, rng)


def etpf_step(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> Ensemble:
    return etpf_analysis(forecast, y, cfg, rng).ensemble


def etpf2_step(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> Ensemble:
    return etpf2_analysis(forecast, y, cfg, rng).ensemble


def fetpf_step(forecast: Ensemble, y: float, cfg: FilterConfig, rng: np.random.Generator) -> Ensemble:
    return fetpf_analysis(forecast, y, cfg, rng).ensemble


def invariant_violations(result: AnalysisResult) -> list[str]:
    """Mean preservation for every variant, covariance preservation for ETPF2 (pre-rejuvenation)."""
    violations = []
    expected = result.expected_mean
    mean_error = np.max(np.abs(result.pre_rejuvenation.mean(axis=1) - expected))
    if mean_error > constants.MEAN_TOLERANCE:
        violations.append(f"mean off by {mean_error:.3e}")
    if result.target_covariance is not None:
        target = result.target_covariance
        covariance_error = np.linalg.norm(sample_covariance(result.pre_rejuvenation) - target)
        if covariance_error > constants.COVARIANCE_TOLERANCE * max(1.0, float(np.linalg.norm(target))):
            violations.append(f"covariance off by {covariance_error:.3e}")
    return violations
