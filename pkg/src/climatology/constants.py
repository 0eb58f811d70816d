from pathlib import Path

DATA_DIR = Path(__file__).parent / "data"
BUNDLED_TARGETS = {
    "climatology": DATA_DIR / "climatology.txt",
    "cluster_1": DATA_DIR / "cluster_1.txt",
    "cluster_2": DATA_DIR / "cluster_2.txt",
}
IDENTITY_LABEL = "identity"

ATTRACTOR_SAMPLES = 50_000
ATTRACTOR_SPACING = 0.12

KMEANS_RESTARTS = 10
KMEANS_MAX_ITERATIONS = 300

# Forecast-covariance sampling for the clustered targets: N=100 ETPF, 20000 samples over 2400 time units.
CLUSTER_ENSEMBLE_SIZE = 100
CLUSTER_SAMPLES = 20_000
CLUSTER_TIME_SPAN = 2400.0
CLUSTER_TAU = 0.04


class ErrorCode:
    NONPOSITIVE_TRACE = "Matrix trace must be positive to normalize."
    NOT_SQUARE = "Covariance matrices must be square."
    TOO_FEW_SAMPLES = "Attractor covariance needs at least two samples."
    NONPOSITIVE_SPACING = "Sample spacing must be positive."
    TOO_MANY_CLUSTERS = "k must lie between 1 and the number of samples."
    PROPAGATION_FAILED = "Trajectory left the finite range during propagation."
    MALFORMED_MATRIX_FILE = "Matrix file is malformed."
    MATRIX_FILE_UNREADABLE = "Matrix file could not be read or written."
    TARGET_NOT_FOUND = "Target not found."
