from src.climatology.constants import ErrorCode
from src.exceptions import ComputationError, ConfigurationError, NotFound, StorageError


class NonPositiveTrace(ConfigurationError):
    DETAIL = ErrorCode.NONPOSITIVE_TRACE


class NotSquare(ConfigurationError):
    DETAIL = ErrorCode.NOT_SQUARE


class TooFewSamples(ConfigurationError):
    DETAIL = ErrorCode.TOO_FEW_SAMPLES


class NonPositiveSpacing(ConfigurationError):
    DETAIL = ErrorCode.NONPOSITIVE_SPACING


class TooManyClusters(ConfigurationError):
    DETAIL = ErrorCode.TOO_MANY_CLUSTERS


class PropagationFailed(ComputationError):
    DETAIL = ErrorCode.PROPAGATION_FAILED


class MalformedMatrixFile(ConfigurationError):
    DETAIL = ErrorCode.MALFORMED_MATRIX_FILE


class MatrixFileUnreadable(StorageError):
    DETAIL = ErrorCode.MATRIX_FILE_UNREADABLE


class TargetNotFound(NotFound):
    DETAIL = ErrorCode.TARGET_NOT_FOUND
