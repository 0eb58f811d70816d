from src.ensembles.exceptions import FilterDivergence
from src.exceptions import ConfigurationError, DimensionMismatch
from src.shrinkage.constants import ErrorCode


class TargetNotSymmetric(ConfigurationError):
    DETAIL = ErrorCode.TARGET_NOT_SYMMETRIC


class TargetNotPositiveDefinite(ConfigurationError):
    DETAIL = ErrorCode.TARGET_NOT_POSITIVE_DEFINITE


class ZeroSampleCovariance(FilterDivergence):
    DETAIL = ErrorCode.ZERO_SAMPLE_COVARIANCE


class DimensionTooSmall(DimensionMismatch):
    DETAIL = ErrorCode.DIMENSION_TOO_SMALL


class InvalidRBLWArguments(ConfigurationError):
    DETAIL = ErrorCode.INVALID_RBLW_ARGUMENTS


class NoTargets(ConfigurationError):
    DETAIL = ErrorCode.NO_TARGETS


class InvalidSamplingArguments(ConfigurationError):
    DETAIL = ErrorCode.INVALID_SAMPLING_ARGUMENTS


class TooFewDynamicMembers(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_DYNAMIC_MEMBERS
