SIGMA = 10.0
RHO = 28.0
BETA = 8.0 / 3.0
STATE_DIMENSION = 3

# Integrator decisions: 10 RK4 substeps per 0.12 window, spinup from (1, 1, 1).
DT_OBS = 0.12
SUBSTEPS = 10
SPINUP_TIME = 100.0
INITIAL_STATE = (1.0, 1.0, 1.0)

OBSERVED_INDEX = 0
NOISE_VARIANCE = 8.0


class ErrorCode:
    STATE_DIMENSION_MISMATCH = "Lorenz '63 states must have 3 components."
    NEGATIVE_TIME_STEP = "Time step must be nonnegative."
    INVALID_SUBSTEPS = "Substep count must be at least 1."
    OBSERVED_INDEX_OUT_OF_RANGE = "Observed index exceeds the state dimension."
