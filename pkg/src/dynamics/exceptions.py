from src.dynamics.constants import ErrorCode
from src.exceptions import ConfigurationError, DimensionMismatch


class StateDimensionMismatch(DimensionMismatch):
    DETAIL = ErrorCode.STATE_DIMENSION_MISMATCH


class NegativeTimeStep(ConfigurationError):
    DETAIL = ErrorCode.NEGATIVE_TIME_STEP


class InvalidSubsteps(ConfigurationError):
    DETAIL = ErrorCode.INVALID_SUBSTEPS


class ObservedIndexOutOfRange(DimensionMismatch):
    DETAIL = ErrorCode.OBSERVED_INDEX_OUT_OF_RANGE
