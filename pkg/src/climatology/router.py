from typing import List

from fastapi import APIRouter

from src.climatology import schemas, service

router = APIRouter(prefix="/climatology", tags=["climatology"])


@router.get("/targets", response_model=List[schemas.Target])
def read_targets():
    return [schemas.Target.from_target(target) for target in service.bundled_targets()]


@router.get("/targets/{label}", response_model=schemas.Target)
def read_target(label: str):
    return schemas.Target.from_target(service.load_bundled_target(label))


@router.post("/normalize", response_model=schemas.Matrix)
def normalize(matrix: schemas.Matrix):
    return schemas.Matrix(matrix=service.trace_normalize(matrix.matrix).tolist())
