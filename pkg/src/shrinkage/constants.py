from enum import Enum

SYMMETRY_TOLERANCE = 1e-12
TRACE_TOLERANCE = 1e-6


class Family(str, Enum):
    GAUSSIAN = "Gaussian"
    LAPLACE = "Laplace"


class ErrorCode:
    TARGET_NOT_SYMMETRIC = "Shrinkage target must be symmetric."
    TARGET_NOT_POSITIVE_DEFINITE = "Shrinkage target must be positive definite."
    ZERO_SAMPLE_COVARIANCE = "Dynamic ensemble covariance vanished; the filter collapsed."
    DIMENSION_TOO_SMALL = "Sphericity needs a state dimension of at least 2."
    INVALID_RBLW_ARGUMENTS = "RBLW shrinkage needs N >= 3, n >= 2 and a nonnegative sphericity."
    NO_TARGETS = "At least one shrinkage target is required."
    INVALID_SAMPLING_ARGUMENTS = "Synthetic sampling needs M >= 2, mu > 0 and alpha > 0."
    TOO_FEW_DYNAMIC_MEMBERS = "Stochastic shrinkage needs at least 3 dynamic members."
