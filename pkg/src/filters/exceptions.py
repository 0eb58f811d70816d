from src.ensembles.exceptions import FilterDivergence
from src.exceptions import ComputationError, ConfigurationError, DimensionMismatch
from src.filters.constants import ErrorCode


class MissingTargets(ConfigurationError):
    DETAIL = ErrorCode.MISSING_TARGETS


class TooFewSynthetic(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_SYNTHETIC


class TooFewForSecondOrder(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_FOR_SECOND_ORDER


class TooFewForRejuvenation(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_FOR_REJUVENATION


class NegativeTau(ConfigurationError):
    DETAIL = ErrorCode.NEGATIVE_TAU


class AnomalyShape(DimensionMismatch):
    DETAIL = ErrorCode.ANOMALY_SHAPE


class InvariantViolated(ComputationError):
    DETAIL = ErrorCode.INVARIANT_VIOLATED


class NonFiniteAnalysis(FilterDivergence):
    DETAIL = ErrorCode.NON_FINITE_ANALYSIS
