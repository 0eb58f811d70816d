import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

import numpy as np
from pydantic import TypeAdapter, ValidationError

from src.climatology import service as climatology
from src.climatology.constants import (
    ATTRACTOR_SAMPLES,
    ATTRACTOR_SPACING,
    CLUSTER_ENSEMBLE_SIZE,
    CLUSTER_SAMPLES,
    CLUSTER_TAU,
    CLUSTER_TIME_SPAN,
    KMEANS_RESTARTS,
)
from src.climatology.utils import write_matrix
from src.config import LOG_LEVEL, configure_logging
from src.exceptions import DetailedError
from src.harness import exceptions as harness_exceptions
from src.harness import service as harness
from src.harness.constants import Preset, Scale
from src.harness.schemas import ExperimentConfig

logger = logging.getLogger(__name__)

GRID = TypeAdapter(List[ExperimentConfig])


def load_grid(path: Path) -> list[ExperimentConfig]:
    """A JSON file holding either one ExperimentConfig or a list of them."""
    try:
        text = Path(path).read_text()
    except OSError as error:
        raise harness_exceptions.ConfigUnreadable(f"{path}: {error}.")
    if text.lstrip().startswith("["):
        return GRID.validate_json(text)
    return [ExperimentConfig.model_validate_json(text)]


def run(args: argparse.Namespace) -> None:
    grid = harness.preset(args.preset, args.scale) if args.preset else []
    if args.config:
        grid += load_grid(args.config)
    if args.seed is not None:
        grid = [cfg.model_copy(update={"master_seed": args.seed}) for cfg in grid]
    report = harness.run_experiment(grid, output_path=args.out, n_jobs=args.jobs)
    diverged = sum(result.diverged for result in report.results)
    logger.info("%d runs, %d diverged; results in %s", len(report.results), diverged, args.out)


def attractor(args: argparse.Namespace) -> None:
    target = climatology.attractor_covariance(args.samples, args.spacing, np.random.default_rng(args.seed))
    write_matrix(args.out, target.covariance)
    logger.info("Attractor covariance written to %s", args.out)


def cluster(args: argparse.Namespace) -> None:
    samples = climatology.load_samples(args.input)
    targets = climatology.kmeans_covariances(samples, args.k, seed=args.seed, restarts=args.restarts)
    for target in targets:
        write_matrix(Path(args.out) / f"{target.label}.txt", target.covariance)
    logger.info("%d cluster targets written to %s", len(targets), args.out)


def covariances(args: argparse.Namespace) -> None:
    samples = climatology.forecast_covariance_samples(
        args.samples,
        args.time_span,
        N=args.N,
        tau=args.tau,
        rng=np.random.default_rng(args.seed),
    )
    width = len(str(len(samples)))
    for k, sample in enumerate(samples):
        write_matrix(Path(args.out) / f"cov_{k:0{width}d}.txt", sample.matrix)
    logger.info("%d forecast covariances written to %s", len(samples), args.out)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fetpf", description="Transform particle filters on Lorenz '63.")
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL_<ENV>.")
    commands = parser.add_subparsers(dest="command", required=True)

    run_parser = commands.add_parser("run", help="Run an experiment grid and write its CSV.")
    run_parser.add_argument("--config", type=Path, help="JSON ExperimentConfig or list of them.")
    run_parser.add_argument("--preset", choices=[p.value for p in Preset])
    run_parser.add_argument("--scale", choices=[s.value for s in Scale], default=Scale.PAPER.value)
    run_parser.add_argument("--out", type=Path, required=True)
    run_parser.add_argument("--jobs", type=int, default=None)
    run_parser.add_argument("--seed", type=int, default=None, help="Overrides master_seed.")
    run_parser.set_defaults(handler=run)

    climatology_parser = commands.add_parser("climatology", help="Estimate the attractor covariance.")
    climatology_parser.add_argument("--samples", type=int, default=ATTRACTOR_SAMPLES)
    climatology_parser.add_argument("--spacing", type=float, default=ATTRACTOR_SPACING)
    climatology_parser.add_argument("--seed", type=int, default=0)
    climatology_parser.add_argument("--out", type=Path, required=True)
    climatology_parser.set_defaults(handler=attractor)

    cluster_parser = commands.add_parser("cluster", help="k-means targets from covariance files.")
    cluster_parser.add_argument("--k", type=int, default=2)
    cluster_parser.add_argument("--in", dest="input", type=Path, required=True)
    cluster_parser.add_argument("--out", type=Path, required=True)
    cluster_parser.add_argument("--seed", type=int, default=0)
    cluster_parser.add_argument("--restarts", type=int, default=KMEANS_RESTARTS)
    cluster_parser.set_defaults(handler=cluster)

    covariances_parser = commands.add_parser("covariances", help="Sample ETPF forecast covariances.")
    covariances_parser.add_argument("--samples", type=int, default=CLUSTER_SAMPLES)
    covariances_parser.add_argument("--time-span", type=float, default=CLUSTER_TIME_SPAN)
    covariances_parser.add_argument("--N", type=int, default=CLUSTER_ENSEMBLE_SIZE)
    covariances_parser.add_argument("--tau", type=float, default=CLUSTER_TAU)
    covariances_parser.add_argument("--seed", type=int, default=0)
    covariances_parser.add_argument("--out", type=Path, required=True)
    covariances_parser.set_defaults(handler=covariances)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging(args.log_level or LOG_LEVEL)
    if args.command == "run" and not (args.preset or args.config):
        logger.error("run needs --preset or --config")
        return 1
    try:
        args.handler(args)
    except DetailedError as error:
        logger.error(error.detail)
        return error.EXIT_CODE
    except ValidationError as error:
        logger.error("Invalid configuration: %s", error)
        return 1
    except OSError as error:
        logger.error("I/O failure: %s", error)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
