import logging
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from src.climatology import constants, exceptions
from src.climatology.schemas import CovarianceSample, KMeansResult
from src.climatology.utils import read_matrix
from src.dynamics import constants as dynamics_constants
from src.dynamics.schemas import ObservationModel
from src.dynamics.service import observe, propagate, spinup_state
from src.ensembles.schemas import Ensemble
from src.filters.constants import Variant
from src.filters.schemas import FilterConfig
from src.filters.service import etpf_step
from src.shrinkage.schemas import ShrinkageTarget
from src.transport.service import sample_covariance

logger = logging.getLogger(__name__)


def trace_normalize(matrix) -> np.ndarray:
    """Scale `matrix` so that its trace equals its dimension."""
    try:
        matrix = np.asarray(matrix, dtype=float)
    except ValueError as error:
        raise exceptions.NotSquare(f"{error}.")
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise exceptions.NotSquare(f"Got shape {matrix.shape}.")
    trace = np.trace(matrix)
    if not trace > 0.0:
        raise exceptions.NonPositiveTrace(f"Got trace {trace!r}.")
    return matrix * (matrix.shape[0] / trace)


def _advance(state: np.ndarray, interval: float) -> np.ndarray:
    state = propagate(state, interval, dynamics_constants.SUBSTEPS)
    if not np.all(np.isfinite(state)):
        raise exceptions.PropagationFailed()
    return state


def attractor_covariance(
    sample_count: int = constants.ATTRACTOR_SAMPLES,
    spacing: float = constants.ATTRACTOR_SPACING,
    rng: Optional[np.random.Generator] = None,
    label: str = "climatology",
) -> ShrinkageTarget:
    """Trace-normalized temporal covariance of a long Lorenz '63 trajectory."""
    if sample_count < 2:
        raise exceptions.TooFewSamples(f"Got {sample_count}.")
    if not spacing > 0:
        raise exceptions.NonPositiveSpacing(f"Got {spacing}.")
    rng = rng if rng is not None else np.random.default_rng()

    initial = np.asarray(dynamics_constants.INITIAL_STATE, dtype=float) + rng.standard_normal(
        dynamics_constants.STATE_DIMENSION
    )
    state = spinup_state(initial)
    if not np.all(np.isfinite(state)):
        raise exceptions.PropagationFailed("During spin-up.")

    samples = np.empty((dynamics_constants.STATE_DIMENSION, sample_count))
    for k in range(sample_count):
        state = _advance(state, spacing)
        samples[:, k] = state
    logger.info("Sampled %d attractor states every %.3f time units", sample_count, spacing)
    return ShrinkageTarget(covariance=trace_normalize(sample_covariance(samples)), label=label)


def _frobenius_distances(points: np.ndarray, centroids: np.ndarray) -> np.ndarray:
    return ((points[:, np.newaxis, :] - centroids[np.newaxis, :, :]) ** 2).sum(axis=2)


def _seed_centroids(points: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    """k-means++: each new seed is drawn with probability proportional to its squared distance."""
    chosen = [int(rng.integers(points.shape[0]))]
    for _ in range(1, k):
        distances = _frobenius_distances(points, points[chosen]).min(axis=1)
        total = distances.sum()
        if total <= 0.0:
            chosen.append(int(rng.integers(points.shape[0])))
            continue
        chosen.append(int(rng.choice(points.shape[0], p=distances / total)))
    return points[chosen].copy()


def lloyd(
    points: np.ndarray,
    k: int,
    rng: np.random.Generator,
    max_iterations: int = constants.KMEANS_MAX_ITERATIONS,
) -> KMeansResult:
    centroids = _seed_centroids(points, k, rng)
    labels = None
    history = []
    for _ in range(max_iterations):
        distances = _frobenius_distances(points, centroids)
        new_labels = distances.argmin(axis=1)
        history.append(float(distances[np.arange(points.shape[0]), new_labels].sum()))
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        for c in range(k):
            members = points[labels == c]
            # an empty cluster keeps its previous centroid
            if members.shape[0]:
                centroids[c] = members.mean(axis=0)
    distances = _frobenius_distances(points, centroids)
    labels = distances.argmin(axis=1)
    inertia = float(distances[np.arange(points.shape[0]), labels].sum())
    return KMeansResult(centroids=centroids, labels=labels, inertia=inertia, inertia_history=history)


def kmeans(
    samples: Sequence[CovarianceSample],
    k: int,
    seed: int = 0,
    restarts: int = constants.KMEANS_RESTARTS,
    max_iterations: int = constants.KMEANS_MAX_ITERATIONS,
    n_jobs: int = 1,
) -> KMeansResult:
    """Lloyd's algorithm under squared Frobenius distance, best of `restarts` seeded runs."""
    if not 1 <= k <= len(samples):
        raise exceptions.TooManyClusters(f"Got k={k} for {len(samples)} samples.")
    shape = np.asarray(samples[0].matrix).shape
    points = np.stack([np.asarray(sample.matrix, dtype=float).ravel() for sample in samples])

    streams = [np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(restarts)]
    runs = Parallel(n_jobs=n_jobs)(delayed(lloyd)(points, k, stream, max_iterations) for stream in streams)
    best = min(runs, key=lambda run: run.inertia)
    logger.info("k-means k=%d: best inertia %.6g over %d restarts", k, best.inertia, restarts)
    return KMeansResult(
        centroids=best.centroids.reshape((k,) + shape),
        labels=best.labels,
        inertia=best.inertia,
        inertia_history=best.inertia_history,
    )


def kmeans_covariances(
    samples: Sequence[CovarianceSample],
    k: int,
    seed: int = 0,
    restarts: int = constants.KMEANS_RESTARTS,
    max_iterations: int = constants.KMEANS_MAX_ITERATIONS,
) -> list[ShrinkageTarget]:
    result = kmeans(samples, k, seed, restarts, max_iterations)
    return [
        ShrinkageTarget(covariance=trace_normalize(centroid), label=f"cluster_{c + 1}")
        for c, centroid in enumerate(result.centroids)
    ]


def forecast_covariance_samples(
    sample_count: int = constants.CLUSTER_SAMPLES,
    time_span: float = constants.CLUSTER_TIME_SPAN,
    N: int = constants.CLUSTER_ENSEMBLE_SIZE,
    tau: float = constants.CLUSTER_TAU,
    dt_obs: float = dynamics_constants.DT_OBS,
    rng: Optional[np.random.Generator] = None,
) -> list[CovarianceSample]:
    """Trace-normalized forecast covariances of an ETPF run, recorded at evenly spaced windows."""
    if sample_count < 1:
        raise exceptions.TooFewSamples(f"Got {sample_count}.")
    rng = rng if rng is not None else np.random.default_rng()
    windows = max(int(round(time_span / dt_obs)), 1)
    recorded = set(np.linspace(1, windows, num=min(sample_count, windows), dtype=int).tolist())
    if len(recorded) < sample_count:
        logger.warning("Only %d distinct windows for %d requested samples", len(recorded), sample_count)

    observation = ObservationModel()
    cfg = FilterConfig(variant=Variant.ETPF, tau=tau, observation=observation)
    truth = spinup_state()
    states = truth[:, np.newaxis] + np.sqrt(observation.noise_variance) * rng.standard_normal(
        (dynamics_constants.STATE_DIMENSION, N)
    )
    samples = []
    for t in range(1, windows + 1):
        truth = _advance(truth, dt_obs)
        states = _advance(states, dt_obs)
        if t in recorded:
            samples.append(CovarianceSample(matrix=trace_normalize(sample_covariance(states)), time_index=t))
        y = observe(truth, observation, rng.standard_normal())
        states = etpf_step(Ensemble.uniform(states), y, cfg, rng).states
    logger.info("Recorded %d forecast covariances over %d windows", len(samples), windows)
    return samples


def bundled_labels() -> list[str]:
    return list(constants.BUNDLED_TARGETS) + [constants.IDENTITY_LABEL]


def identity_target(dimension: int = dynamics_constants.STATE_DIMENSION) -> ShrinkageTarget:
    return ShrinkageTarget(covariance=np.eye(dimension), label=constants.IDENTITY_LABEL)


def load_bundled_target(label: str) -> ShrinkageTarget:
    if label == constants.IDENTITY_LABEL:
        return identity_target()
    if label not in constants.BUNDLED_TARGETS:
        raise exceptions.TargetNotFound(f"Unknown label {label!r}.")
    # the shipped literals are rounded, so their traces are only close to n
    return ShrinkageTarget(covariance=trace_normalize(read_matrix(constants.BUNDLED_TARGETS[label])), label=label)


def bundled_targets() -> list[ShrinkageTarget]:
    return [load_bundled_target(label) for label in bundled_labels()]


def load_target(reference: str | Path) -> ShrinkageTarget:
    """Resolve a bundled label or a path to a matrix file."""
    if str(reference) in bundled_labels():
        return load_bundled_target(str(reference))
    path = Path(reference)
    if not path.exists():
        raise exceptions.TargetNotFound(f"No bundled label or file {str(reference)!r}.")
    return ShrinkageTarget(covariance=trace_normalize(read_matrix(path)), label=path.stem)


def load_samples(directory: str | Path) -> list[CovarianceSample]:
    """Every matrix file in `directory`, in file-name order."""
    directory = Path(directory)
    if not directory.is_dir():
        raise exceptions.MatrixFileUnreadable(f"{directory} is not a directory.")
    paths = sorted(path for path in directory.iterdir() if path.is_file())
    return [CovarianceSample(matrix=read_matrix(path), time_index=t) for t, path in enumerate(paths)]
