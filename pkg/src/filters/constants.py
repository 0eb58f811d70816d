from enum import Enum

DEFAULT_TAU = 0.04
DEFAULT_SYNTHETIC_SIZE = 100

# Online invariant tolerances: absolute for the mean, relative to max(1, |target|) for the covariance.
MEAN_TOLERANCE = 1e-8
COVARIANCE_TOLERANCE = 1e-6


class Variant(str, Enum):
    ETPF = "ETPF"
    ETPF2 = "ETPF2"
    FETPF = "FETPF"


class ErrorCode:
    MISSING_TARGETS = "FETPF needs at least one shrinkage target."
    TOO_FEW_SYNTHETIC = "FETPF needs a synthetic ensemble of at least 2 members."
    TOO_FEW_FOR_SECOND_ORDER = "ETPF2 needs more members than state dimensions."
    TOO_FEW_FOR_REJUVENATION = "Rejuvenation needs at least 2 members."
    NEGATIVE_TAU = "The rejuvenation factor must be nonnegative."
    ANOMALY_SHAPE = "Forecast anomalies must match the analysis ensemble shape."
    INVARIANT_VIOLATED = "Analysis violated a filter invariant."
    NON_FINITE_ANALYSIS = "Analysis ensemble contains non-finite values."
