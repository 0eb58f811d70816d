from src.exceptions import ComputationError, ConfigurationError, DimensionMismatch
from src.ensembles.exceptions import FilterDivergence
from src.transport.constants import ErrorCode


class NegativeMarginals(ConfigurationError):
    DETAIL = ErrorCode.NEGATIVE_MARGINALS


class UnbalancedMarginals(ConfigurationError):
    DETAIL = ErrorCode.UNBALANCED_MARGINALS


class NonFiniteCost(ConfigurationError):
    DETAIL = ErrorCode.NON_FINITE_COST


class ShapeMismatch(DimensionMismatch):
    DETAIL = ErrorCode.SHAPE_MISMATCH


class ColumnSumsNotOne(ConfigurationError):
    DETAIL = ErrorCode.COLUMN_SUMS_NOT_ONE


class NotSquare(DimensionMismatch):
    DETAIL = ErrorCode.NOT_SQUARE


class CovarianceMatchFailed(FilterDivergence):
    DETAIL = ErrorCode.COVARIANCE_MATCH_FAILED


class PivotLimitExceeded(ComputationError):
    DETAIL = ErrorCode.PIVOT_LIMIT
