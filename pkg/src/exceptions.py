from typing import Optional

from fastapi import status


class DetailedError(Exception):
    STATUS_CODE = status.HTTP_500_INTERNAL_SERVER_ERROR
    EXIT_CODE = 2
    DETAIL = "Server error"

    def __init__(self, detail: Optional[str] = None) -> None:
        self.detail = f"{self.DETAIL} {detail}" if detail else self.DETAIL
        super().__init__(self.detail)


class ConfigurationError(DetailedError):
    STATUS_CODE = status.HTTP_422_UNPROCESSABLE_ENTITY
    EXIT_CODE = 1
    DETAIL = "Invalid configuration."


class NotFound(ConfigurationError):
    STATUS_CODE = status.HTTP_404_NOT_FOUND
    DETAIL = "Not found."


class ComputationError(DetailedError):
    STATUS_CODE = status.HTTP_500_INTERNAL_SERVER_ERROR
    EXIT_CODE = 2
    DETAIL = "Computation failed."


class DimensionMismatch(ConfigurationError):
    DETAIL = "Dimension mismatch."


class StorageError(DetailedError):
    STATUS_CODE = status.HTTP_500_INTERNAL_SERVER_ERROR
    EXIT_CODE = 3
    DETAIL = "I/O failure."
