from typing import List

from fastapi import APIRouter

from src.harness import schemas, service
from src.harness.constants import Scale

router = APIRouter(prefix="/experiments", tags=["experiments"])


@router.get("/presets/{name}", response_model=List[schemas.ExperimentConfig])
def read_preset(name: str, scale: Scale = Scale.DESK):
    return service.preset(name, scale)


@router.post("/replicates", response_model=schemas.RunResult)
def run_replicate(cfg: schemas.ExperimentConfig, replicate_index: int = 0):
    return service.run_replicate(cfg, replicate_index)


@router.post("/", response_model=schemas.ExperimentReport)
def run_experiment(grid: List[schemas.ExperimentConfig]):
    return service.run_experiment(grid)
