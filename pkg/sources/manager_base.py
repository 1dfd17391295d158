from typing import List, Union


class BaseEnvironmentManager:
    """Base class for environment variables"""

    _TRUTHY: List[str] = ["true", "1", "t", "y", "yes"]

    @staticmethod
    def is_truthy(value: Union[str, int, bool]) -> bool:
        """
        Check if a value should be considered truthy.

        Args:
            value: Input value that could be string, int, or bool

        Returns:
            bool: True if value is considered truthy
        """
        if isinstance(value, bool):
            return value
        if isinstance(value, int):
            return bool(value)
        if isinstance(value, str):
            return value.lower() in BaseEnvironmentManager._TRUTHY
        return False

    @staticmethod
    def positive_float(value: Union[str, float], name: str) -> float:
        """
        Parse a strictly positive float (tolerances).

        Raises:
            ValueError: If the value is not a positive number
        """
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise ValueError(f"{name} must be a number, got {value!r}")
        if not number > 0:
            raise ValueError(f"{name} must be positive, got {number}")
        return number

    @staticmethod
    def non_negative_int(value: Union[str, int], name: str) -> int:
        """
        Parse a non-negative integer (seeds, counts).

        Raises:
            ValueError: If the value is not an integer >= 0
        """
        try:
            number = int(value)
        except (TypeError, ValueError):
            raise ValueError(f"{name} must be an integer, got {value!r}")
        if number < 0:
            raise ValueError(f"{name} must be non-negative, got {number}")
        return number
