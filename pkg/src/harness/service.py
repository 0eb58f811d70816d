import logging
import time
from pathlib import Path
from typing import Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from src.config import N_JOBS
from src.dynamics import constants as dynamics_constants
from src.dynamics.service import observe, propagate, spinup_state
from src.ensembles.exceptions import FilterDivergence
from src.ensembles.schemas import Ensemble
from src.ensembles.service import spatio_temporal_rmse
from src.filters import exceptions as filter_exceptions
from src.filters.constants import Variant
from src.filters.service import assimilate, invariant_violations
from src.harness import constants, exceptions
from src.harness.constants import Preset, Scale
from src.harness.schemas import ExperimentConfig, ExperimentReport, RunResult
from src.harness.utils import replicate_seed, results_frame, summary_rows, write_results
from src.shrinkage.constants import Family

logger = logging.getLogger(__name__)


def _result(cfg: ExperimentConfig, replicate_index: int, seed: int, **fields) -> RunResult:
    shrinkage = cfg.is_shrinkage
    return RunResult(
        experiment_id=cfg.experiment_id,
        variant=cfg.variant.value,
        N=cfg.N,
        M=cfg.M if shrinkage else 0,
        alpha=cfg.inflation_alpha if shrinkage else 1.0,
        tau=0.0 if shrinkage else cfg.tau,
        family=cfg.family.value if shrinkage else constants.NO_FAMILY,
        replicate=replicate_index,
        seed=seed,
        **fields,
    )


def twin_experiment(cfg: ExperimentConfig, seed: int) -> tuple[np.ndarray, np.ndarray, int]:
    """Run one filter against a synthetic truth.

    Returns the truth and analysis means (both total_steps×3, one row per
    assimilation window) and the number of windows whose weights collapsed.
    """
    truth_stream, observation_stream, filter_stream = (
        np.random.default_rng(child) for child in np.random.SeedSequence(seed).spawn(3)
    )
    filter_cfg = cfg.filter_config()
    observation = cfg.observation
    dimension = dynamics_constants.STATE_DIMENSION

    truth = spinup_state(
        np.asarray(dynamics_constants.INITIAL_STATE, dtype=float) + truth_stream.standard_normal(dimension),
        dt_obs=cfg.dt_obs,
        substeps=cfg.substeps,
    )
    states = truth[:, np.newaxis] + np.sqrt(observation.noise_variance) * truth_stream.standard_normal((dimension, cfg.N))

    truths = np.empty((cfg.total_steps, dimension))
    means = np.empty((cfg.total_steps, dimension))
    collapses = 0
    try:
        for t in range(cfg.total_steps):
            truth = propagate(truth, cfg.dt_obs, cfg.substeps)
            states = propagate(states, cfg.dt_obs, cfg.substeps)
            if not np.all(np.isfinite(states)):
                raise filter_exceptions.NonFiniteAnalysis(f"Forecast at window {t + 1}.")
            y = observe(truth, observation, observation_stream.standard_normal())

            result = assimilate(Ensemble.uniform(states), y, filter_cfg, filter_stream)
            violations = invariant_violations(result)
            if violations:
                logger.warning("%s window %d: %s", cfg.experiment_id, t + 1, "; ".join(violations))
                if cfg.strict:
                    raise filter_exceptions.InvariantViolated(f"Window {t + 1}: {'; '.join(violations)}.")
            if result.collapsed:
                collapses += 1
            logger.debug("Window %d: ESS %.2f", t + 1, result.effective_sample_size)

            states = result.ensemble.states
            truths[t] = truth
            means[t] = result.analysis_mean
    except FilterDivergence as error:
        error.collapses = collapses
        raise
    return truths, means, collapses


def run_replicate(cfg: ExperimentConfig, replicate_index: int, grid_index: int = 0) -> RunResult:
    seed = replicate_seed(cfg.master_seed, grid_index, replicate_index)
    try:
        truths, means, collapses = twin_experiment(cfg, seed)
    except FilterDivergence as error:
        logger.warning("%s replicate %d diverged: %s", cfg.experiment_id, replicate_index, error.detail)
        return _result(
            cfg, replicate_index, seed, rmse=float("inf"), collapse_flags=error.collapses, diagnostic=error.detail
        )

    rmse = spatio_temporal_rmse(truths[cfg.spinup_steps :], means[cfg.spinup_steps :])
    logger.info("%s replicate %d: rmse %.4f, %d collapses", cfg.experiment_id, replicate_index, rmse, collapses)
    return _result(cfg, replicate_index, seed, rmse=rmse, collapse_flags=collapses)


def run_experiment(
    grid: Sequence[ExperimentConfig],
    output_path: Optional[str | Path] = None,
    n_jobs: Optional[int] = None,
) -> ExperimentReport:
    """Run every (config, replicate) pair; write the CSV and its summary when a path is known."""
    if not grid:
        raise exceptions.EmptyGrid()
    output_path = output_path if output_path is not None else grid[0].output_path
    n_jobs = n_jobs if n_jobs is not None else (grid[0].n_jobs or N_JOBS)

    tasks = [(grid_index, cfg, r) for grid_index, cfg in enumerate(grid) for r in range(cfg.replicates)]
    logger.info("Running %d replicates over %d configurations with n_jobs=%d", len(tasks), len(grid), n_jobs)
    started = time.perf_counter()
    results = Parallel(n_jobs=n_jobs)(delayed(run_replicate)(cfg, r, grid_index) for grid_index, cfg, r in tasks)
    logger.info("Experiment finished in %.1f s", time.perf_counter() - started)

    if output_path is not None:
        write_results(results, output_path)
        logger.info("Wrote %d rows to %s", len(results), output_path)
    return ExperimentReport(results=results, summary=summary_rows(results_frame(results)))


def _scaled(scale: Scale, **fields) -> ExperimentConfig:
    total_steps, spinup_steps, replicates = constants.SCALES[scale]
    return ExperimentConfig(total_steps=total_steps, spinup_steps=spinup_steps, replicates=replicates, **fields)


def _ensemble_size_grid(name: Preset, scale: Scale, targets: list[str]) -> list[ExperimentConfig]:
    grid = []
    for N in constants.ENSEMBLE_SIZES:
        for variant in (Variant.ETPF, Variant.ETPF2):
            grid.append(
                _scaled(
                    scale,
                    experiment_id=f"{name.value}-{variant.value}-N{N}",
                    variant=variant,
                    tau=constants.REJUVENATION_TAU,
                    N=N,
                )
            )
        for family in Family:
            for alpha in constants.SHRINKAGE_INFLATIONS:
                grid.append(
                    _scaled(
                        scale,
                        experiment_id=f"{name.value}-FETPF-{family.value}-a{alpha}-N{N}",
                        variant=Variant.FETPF,
                        M=constants.SHRINKAGE_SIZE,
                        family=family,
                        inflation_alpha=alpha,
                        target_files=targets,
                        N=N,
                    )
                )
    return grid


def _synthetic_size_grid(scale: Scale) -> list[ExperimentConfig]:
    return [
        _scaled(
            scale,
            experiment_id=f"{Preset.FIG3.value}-FETPF-M{M}-a{alpha}",
            variant=Variant.FETPF,
            M=M,
            family=Family.GAUSSIAN,
            inflation_alpha=alpha,
            target_files=constants.SINGLE_TARGET,
            N=constants.SMALL_ENSEMBLE,
        )
        for M in constants.SYNTHETIC_SIZES
        for alpha in constants.INFLATIONS
    ]


def preset(name: str, scale: str = Scale.PAPER) -> list[ExperimentConfig]:
    """Experiment grids for the ensemble-size campaigns and the synthetic-size/inflation sweep."""
    try:
        name, scale = Preset(name), Scale(scale)
    except ValueError:
        raise exceptions.UnknownPreset(f"Got {name!r} at scale {scale!r}.")
    if name is Preset.FIG1:
        return _ensemble_size_grid(name, scale, constants.SINGLE_TARGET)
    if name is Preset.FIG2:
        return _ensemble_size_grid(name, scale, constants.CLUSTERED_TARGETS)
    return _synthetic_size_grid(scale)
