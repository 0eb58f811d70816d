import numpy as np
from scipy import linalg


def as_matrix(values) -> np.ndarray:
    """Return a float 2-D array, promoting vectors to a single column."""
    matrix = np.asarray(values, dtype=float)
    if matrix.ndim == 1:
        matrix = matrix[:, np.newaxis]
    return matrix


def symmetrize(matrix: np.ndarray) -> np.ndarray:
    return 0.5 * (matrix + matrix.T)


def symmetric_eigh(matrix: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    return linalg.eigh(symmetrize(matrix))


def symmetric_sqrt(matrix: np.ndarray) -> np.ndarray:
    """Principal square root of a symmetric PSD matrix; tiny negative eigenvalues clip to 0."""
    eigvals, eigvecs = symmetric_eigh(matrix)
    eigvals = np.clip(eigvals, 0.0, None)
    return symmetrize((eigvecs * np.sqrt(eigvals)) @ eigvecs.T)


def symmetric_inverse_sqrt(matrix: np.ndarray, rtol: float = 1e-12) -> np.ndarray | None:
    """Inverse principal square root, or None when the matrix is not numerically PD."""
    eigvals, eigvecs = symmetric_eigh(matrix)
    if eigvals.size == 0 or eigvals[0] <= rtol * max(eigvals[-1], 0.0) or eigvals[0] <= 0.0:
        return None
    return symmetrize((eigvecs / np.sqrt(eigvals)) @ eigvecs.T)


def is_symmetric(matrix: np.ndarray, atol: float = 1e-12) -> bool:
    return matrix.ndim == 2 and matrix.shape[0] == matrix.shape[1] and np.allclose(
        matrix, matrix.T, rtol=0.0, atol=atol
    )
