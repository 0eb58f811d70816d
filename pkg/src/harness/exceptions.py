from src.exceptions import ConfigurationError, NotFound, StorageError
from src.harness.constants import ErrorCode


class UnknownPreset(NotFound):
    DETAIL = ErrorCode.UNKNOWN_PRESET


class SpinupTooLong(ConfigurationError):
    DETAIL = ErrorCode.SPINUP_TOO_LONG


class EmptyGrid(ConfigurationError):
    DETAIL = ErrorCode.EMPTY_GRID


class EnsembleTooSmall(ConfigurationError):
    DETAIL = ErrorCode.ENSEMBLE_TOO_SMALL


class InvalidConfig(ConfigurationError):
    DETAIL = ErrorCode.INVALID_CONFIG


class ResultsUnwritable(StorageError):
    DETAIL = ErrorCode.RESULTS_UNWRITABLE


class ResultsUnreadable(StorageError):
    DETAIL = ErrorCode.RESULTS_UNREADABLE


class ConfigUnreadable(StorageError):
    DETAIL = ErrorCode.CONFIG_UNREADABLE
