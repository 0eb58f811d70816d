import math
from pathlib import Path
from typing import Sequence

import numpy as np
import pandas as pd

from src.harness import constants, exceptions
from src.harness.schemas import RunResult, SummaryRow

SEED_MASK = (1 << 63) - 1


def replicate_seed(master_seed: int, grid_index: int, replicate_index: int) -> int:
    """Counter-based 63-bit seed; distinct (grid, replicate) pairs give distinct streams."""
    state = np.random.SeedSequence((master_seed, grid_index, replicate_index)).generate_state(1, dtype=np.uint64)
    return int(state[0]) & SEED_MASK


def summary_path(path: str | Path) -> Path:
    path = Path(path)
    return path.with_name(f"{path.stem}{constants.SUMMARY_SUFFIX}{path.suffix or '.csv'}")


def results_frame(results: Sequence[RunResult]) -> pd.DataFrame:
    return pd.DataFrame([result.model_dump(include=set(constants.CSV_COLUMNS)) for result in results], columns=constants.CSV_COLUMNS)


def summarize(frame: pd.DataFrame) -> pd.DataFrame:
    """Mean RMSE over finite replicates per parameter point, with replicate and divergence counts."""
    frame = frame.assign(diverged=~np.isfinite(frame["rmse"]))
    finite = frame["rmse"].where(~frame["diverged"])
    grouped = frame.assign(finite_rmse=finite).groupby(constants.GROUP_COLUMNS, sort=False)
    return grouped.agg(
        mean_rmse=("finite_rmse", "mean"),
        replicates=("rmse", "size"),
        divergences=("diverged", "sum"),
    ).reset_index()


def summary_rows(frame: pd.DataFrame) -> list[SummaryRow]:
    rows = []
    for record in summarize(frame).to_dict(orient="records"):
        mean = record.pop("mean_rmse")
        rows.append(SummaryRow(mean_rmse=None if math.isnan(mean) else mean, **record))
    return rows


def write_results(results: Sequence[RunResult], path: str | Path) -> Path:
    frame = results_frame(results)
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        frame.to_csv(path, index=False)
        summarize(frame).to_csv(summary_path(path), index=False)
    except OSError as error:
        raise exceptions.ResultsUnwritable(f"{path}: {error}.")
    return path


def read_results(path: str | Path) -> list[RunResult]:
    try:
        frame = pd.read_csv(path, keep_default_na=False, float_precision="round_trip")
    except (OSError, pd.errors.ParserError) as error:
        raise exceptions.ResultsUnreadable(f"{path}: {error}.")
    return [RunResult(**record) for record in frame.to_dict(orient="records")]
