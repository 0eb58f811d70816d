import itertools

import numpy as np
import pytest
from scipy.stats import kurtosis

from src.ensembles.schemas import Ensemble
from src.ensembles.service import weighted_covariance, weighted_mean
from src.shrinkage import exceptions
from src.shrinkage.constants import Family
from src.shrinkage.schemas import ShrinkageTarget
from src.shrinkage.service import (
    build_augmented_ensemble,
    mu_scale,
    rblw_gamma,
    sample_synthetic_anomalies,
    select_target,
    sphericity,
)
from tests.fixtures import (
    CLIMATOLOGY,
    CLUSTER_1,
    CLUSTER_2,
    climatology_target,
    clustered_targets,
    lorenz_ensemble,
    rng,
)


def test_target_validation() -> None:
    with pytest.raises(exceptions.TargetNotSymmetric):
        ShrinkageTarget(covariance=np.array([[1.0, 0.5], [0.0, 1.0]]))
    with pytest.raises(exceptions.TargetNotPositiveDefinite):
        ShrinkageTarget(covariance=np.array([[1.0, 2.0], [2.0, 1.0]]))


def test_bundled_target_trace(climatology_target: ShrinkageTarget) -> None:
    np.testing.assert_allclose(climatology_target.covariance, CLIMATOLOGY * 3.0 / np.trace(CLIMATOLOGY), rtol=1e-14)
    assert climatology_target.is_trace_normalized is True
    assert np.trace(climatology_target.covariance) == pytest.approx(3.0, abs=1e-12)


def test_rounded_literal_is_not_trace_normalized() -> None:
    assert ShrinkageTarget(CLIMATOLOGY).is_trace_normalized is False
    assert ShrinkageTarget(2.0 * np.eye(3)).is_trace_normalized is False
    assert ShrinkageTarget(np.eye(3)).is_trace_normalized is True


def test_sphericity_of_matching_target(climatology_target: ShrinkageTarget) -> None:
    assert sphericity(climatology_target, CLIMATOLOGY) == pytest.approx(0.0, abs=1e-10)


def test_sphericity_hand_value() -> None:
    assert sphericity(ShrinkageTarget(np.eye(3)), np.diag([1.0, 1.0, 4.0])) == pytest.approx(0.25)


@pytest.mark.parametrize("beta", [0.1, 10.0])
def test_sphericity_scale_invariant(lorenz_ensemble: Ensemble, beta: float) -> None:
    sigma = weighted_covariance(lorenz_ensemble)
    base = sphericity(ShrinkageTarget(CLIMATOLOGY), sigma)
    assert sphericity(ShrinkageTarget(beta * CLIMATOLOGY), sigma) == pytest.approx(base, abs=1e-10)


def test_sphericity_needs_two_dimensions() -> None:
    with pytest.raises(exceptions.DimensionTooSmall):
        sphericity(ShrinkageTarget(np.eye(1)), np.eye(1))


def test_sphericity_shape_mismatch() -> None:
    with pytest.raises(exceptions.DimensionMismatch):
        sphericity(ShrinkageTarget(np.eye(3)), np.eye(2))


def test_rblw_gamma_values() -> None:
    assert rblw_gamma(5, 3, 1.0) == pytest.approx(24.0 / 70.0, rel=1e-12)
    assert rblw_gamma(5, 3, 0.0) == 1.0
    assert rblw_gamma(5, 3, 1e12) == pytest.approx(3.0 / 35.0, rel=1e-9)


def test_rblw_gamma_in_unit_interval(rng: np.random.Generator) -> None:
    Ns = rng.integers(3, 1000, size=10_000)
    ns = rng.integers(2, 50, size=10_000)
    Us = 10.0 ** rng.uniform(-6.0, 3.0, size=10_000)
    gammas = np.array([rblw_gamma(int(N), int(n), float(U)) for N, n, U in zip(Ns, ns, Us)])
    assert np.all(gammas > 0.0)
    assert np.all(gammas <= 1.0)


@pytest.mark.parametrize("N, n, U", [(2, 3, 1.0), (5, 1, 1.0), (5, 3, -0.1)])
def test_rblw_gamma_invalid(N: int, n: int, U: float) -> None:
    with pytest.raises(exceptions.InvalidRBLWArguments):
        rblw_gamma(N, n, U)


def test_mu_scale() -> None:
    assert mu_scale(ShrinkageTarget(CLIMATOLOGY), CLIMATOLOGY) == pytest.approx(1.0)
    assert mu_scale(ShrinkageTarget(np.eye(3)), np.diag([1.0, 1.0, 4.0])) == pytest.approx(2.0)
    assert mu_scale(ShrinkageTarget(4.0 * CLIMATOLOGY), CLIMATOLOGY) == pytest.approx(0.25)


def test_select_single_target(climatology_target: ShrinkageTarget) -> None:
    assert select_target([climatology_target], np.diag([1.0, 2.0, 3.0])) is climatology_target


def test_select_target_prefers_mismatch(climatology_target: ShrinkageTarget) -> None:
    matching = ShrinkageTarget(np.diag([1.0, 2.0, 3.0]), label="matching")
    assert select_target([matching, climatology_target], matching.covariance) is climatology_target


def test_select_target_ties_go_first() -> None:
    first, second = ShrinkageTarget(CLIMATOLOGY, "first"), ShrinkageTarget(CLIMATOLOGY, "second")
    assert select_target([first, second], np.diag([1.0, 2.0, 3.0])) is first


def test_select_among_clusters(clustered_targets: list, lorenz_ensemble: Ensemble) -> None:
    sigma = weighted_covariance(lorenz_ensemble)
    values = [sphericity(ShrinkageTarget(CLUSTER_1), sigma), sphericity(ShrinkageTarget(CLUSTER_2), sigma)]
    assert select_target(clustered_targets, sigma) is clustered_targets[int(np.argmax(values))]


def test_select_target_ignores_order(
    climatology_target: ShrinkageTarget, clustered_targets: list, lorenz_ensemble: Ensemble
) -> None:
    sigma = weighted_covariance(lorenz_ensemble)
    targets = [climatology_target, *clustered_targets, ShrinkageTarget(np.eye(3), "identity")]
    chosen = {select_target(list(order), sigma).label for order in itertools.permutations(targets)}
    assert len(chosen) == 1


def test_select_target_needs_targets() -> None:
    with pytest.raises(exceptions.NoTargets):
        select_target([], np.eye(3))


@pytest.mark.parametrize("family", list(Family))
def test_synthetic_anomalies_centered_and_linear(climatology_target: ShrinkageTarget, family: Family) -> None:
    once = sample_synthetic_anomalies(climatology_target, 1.3, 50, family, 1.0, np.random.default_rng(3))
    twice = sample_synthetic_anomalies(climatology_target, 1.3, 50, family, 2.0, np.random.default_rng(3))
    np.testing.assert_allclose(once.mean(axis=1), np.zeros(3), atol=1e-12)
    np.testing.assert_allclose(twice, 2.0 * once, rtol=1e-14)


@pytest.mark.parametrize("family", list(Family))
def test_synthetic_covariance_converges(climatology_target: ShrinkageTarget, rng: np.random.Generator, family: Family) -> None:
    mu, alpha = 1.7, 1.2
    samples = sample_synthetic_anomalies(climatology_target, mu, 100_000, family, alpha, rng)
    expected = alpha**2 * mu * CLIMATOLOGY
    assert np.linalg.norm(np.cov(samples) - expected) < 0.05 * np.linalg.norm(expected)


def test_laplace_tails_heavier(climatology_target: ShrinkageTarget, rng: np.random.Generator) -> None:
    samples = sample_synthetic_anomalies(climatology_target, 1.0, 100_000, Family.LAPLACE, 1.0, rng)
    assert np.all(kurtosis(samples, axis=1) > 0.0)


@pytest.mark.parametrize("M, mu, alpha", [(1, 1.0, 1.0), (10, 0.0, 1.0), (10, 1.0, 0.0)])
def test_invalid_sampling(climatology_target: ShrinkageTarget, rng: np.random.Generator, M: int, mu: float, alpha: float) -> None:
    with pytest.raises(exceptions.InvalidSamplingArguments):
        sample_synthetic_anomalies(climatology_target, mu, M, Family.GAUSSIAN, alpha, rng)


def test_augmented_ensemble(lorenz_ensemble: Ensemble, climatology_target: ShrinkageTarget, rng: np.random.Generator) -> None:
    augmented = build_augmented_ensemble(lorenz_ensemble, [climatology_target], 30, Family.GAUSSIAN, 1.2, rng)
    N, M = lorenz_ensemble.size, 30
    assert augmented.states.shape == (3, N + M)
    assert 0.0 < augmented.gamma <= 1.0
    np.testing.assert_allclose(augmented.weights[:N], (1.0 - augmented.gamma) / N)
    np.testing.assert_allclose(augmented.weights[N:], augmented.gamma / M)
    np.testing.assert_array_equal(augmented.dynamic_states, lorenz_ensemble.states)
    np.testing.assert_allclose(weighted_mean(augmented.ensemble), lorenz_ensemble.states.mean(axis=1), atol=1e-10)
    assert augmented.target_label == "climatology"
    assert augmented.sphericity == pytest.approx(
        sphericity(climatology_target, weighted_covariance(lorenz_ensemble))
    )


def test_augmented_ensemble_gamma_override(lorenz_ensemble: Ensemble, climatology_target: ShrinkageTarget, rng: np.random.Generator) -> None:
    augmented = build_augmented_ensemble(
        lorenz_ensemble, [climatology_target], 10, Family.GAUSSIAN, 1.0, rng, gamma_override=0.0
    )
    np.testing.assert_array_equal(augmented.weights[lorenz_ensemble.size :], np.zeros(10))
    np.testing.assert_allclose(augmented.weights[: lorenz_ensemble.size], 1.0 / lorenz_ensemble.size)


@pytest.mark.parametrize("beta", [0.1, 10.0])
def test_augmented_ensemble_target_scale_invariant(lorenz_ensemble: Ensemble, beta: float) -> None:
    base = build_augmented_ensemble(
        lorenz_ensemble, [ShrinkageTarget(CLIMATOLOGY)], 40, Family.LAPLACE, 1.2, np.random.default_rng(11)
    )
    scaled = build_augmented_ensemble(
        lorenz_ensemble, [ShrinkageTarget(beta * CLIMATOLOGY)], 40, Family.LAPLACE, 1.2, np.random.default_rng(11)
    )
    np.testing.assert_allclose(scaled.states, base.states, rtol=0.0, atol=1e-10)
    assert scaled.gamma == pytest.approx(base.gamma, abs=1e-10)


def test_augmented_covariance_blends(rng: np.random.Generator, climatology_target: ShrinkageTarget) -> None:
    dynamic = Ensemble.uniform(np.diag([1.0, 2.0, 0.5]) @ rng.standard_normal((3, 400)))
    alpha = 1.1
    augmented = build_augmented_ensemble(dynamic, [climatology_target], 100_000, Family.GAUSSIAN, alpha, rng)
    expected = (1.0 - augmented.gamma) * weighted_covariance(dynamic) + augmented.gamma * alpha**2 * augmented.mu * CLIMATOLOGY
    assert np.linalg.norm(weighted_covariance(augmented.ensemble) - expected) < 0.05 * np.linalg.norm(expected)


def test_augmented_ensemble_collapsed(climatology_target: ShrinkageTarget, rng: np.random.Generator) -> None:
    with pytest.raises(exceptions.ZeroSampleCovariance):
        build_augmented_ensemble(Ensemble.uniform(np.ones((3, 5))), [climatology_target], 10, Family.GAUSSIAN, 1.0, rng)


def test_augmented_ensemble_too_small(climatology_target: ShrinkageTarget, rng: np.random.Generator) -> None:
    with pytest.raises(exceptions.TooFewDynamicMembers):
        build_augmented_ensemble(Ensemble.uniform(rng.standard_normal((3, 2))), [climatology_target], 10, Family.GAUSSIAN, 1.0, rng)


def test_one_dimensional_state_needs_fixed_gamma(rng: np.random.Generator) -> None:
    dynamic = Ensemble.uniform(rng.standard_normal((1, 4)))
    target = ShrinkageTarget(np.eye(1))
    with pytest.raises(exceptions.DimensionTooSmall):
        build_augmented_ensemble(dynamic, [target], 5, Family.GAUSSIAN, 1.0, rng)
    augmented = build_augmented_ensemble(dynamic, [target], 5, Family.GAUSSIAN, 1.0, rng, gamma_override=0.3)
    assert augmented.sphericity is None
    assert augmented.gamma == 0.3
