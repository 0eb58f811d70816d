from src.ensembles.constants import ErrorCode
from src.exceptions import ComputationError, ConfigurationError, DimensionMismatch


class InvalidWeights(ConfigurationError):
    DETAIL = ErrorCode.INVALID_WEIGHTS


class NonFiniteStates(ComputationError):
    DETAIL = ErrorCode.NON_FINITE_STATES


class EmptyEnsemble(ConfigurationError):
    DETAIL = ErrorCode.EMPTY_ENSEMBLE


class TooFewMembers(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_MEMBERS


class FilterDivergence(ComputationError):
    """Raised when an assimilation step cannot continue; the harness records it as a diverged run."""

    # collapsed windows seen before the failure, filled in by the twin experiment
    collapses = 0


class WeightUnderflow(FilterDivergence):
    DETAIL = ErrorCode.WEIGHT_UNDERFLOW


class EmptySequence(ConfigurationError):
    DETAIL = ErrorCode.EMPTY_SEQUENCE


class SequenceMismatch(DimensionMismatch):
    DETAIL = ErrorCode.SEQUENCE_MISMATCH
