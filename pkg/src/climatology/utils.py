from pathlib import Path

import numpy as np

from src.climatology import exceptions


def read_matrix(path: Path) -> np.ndarray:
    """Parse a matrix file: the dimension n on the first line, then n whitespace-separated rows."""
    try:
        with open(path) as handle:
            header = handle.readline().split()
            try:
                n = int(header[0]) if len(header) == 1 else None
                matrix = np.loadtxt(handle, ndmin=2) if n else None
            except ValueError as error:
                raise exceptions.MalformedMatrixFile(f"{path}: {error}.")
    except OSError as error:
        raise exceptions.MatrixFileUnreadable(f"{path}: {error}.")
    if matrix is None or matrix.shape != (n, n):
        raise exceptions.MalformedMatrixFile(f"{path}: expected {n} rows of {n} values.")
    return matrix


def write_matrix(path: Path, matrix: np.ndarray) -> Path:
    matrix = np.asarray(matrix, dtype=float)
    try:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        np.savetxt(path, matrix, fmt="%.17g", header=str(matrix.shape[0]), comments="")
    except OSError as error:
        raise exceptions.MatrixFileUnreadable(f"{path}: {error}.")
    return path
