WEIGHT_SUM_TOLERANCE = 1e-12
COLLAPSE_THRESHOLD = 1.0 - 1e-12


class ErrorCode:
    INVALID_WEIGHTS = "Ensemble weights must be nonnegative and sum to one."
    NON_FINITE_STATES = "Ensemble states must be finite."
    EMPTY_ENSEMBLE = "An ensemble needs at least one member."
    TOO_FEW_MEMBERS = "Covariance estimation needs at least two members."
    WEIGHT_UNDERFLOW = "All posterior weights underflowed to zero; the filter diverged."
    EMPTY_SEQUENCE = "RMSE needs at least one time step."
    SEQUENCE_MISMATCH = "Truth and analysis sequences differ in shape."
