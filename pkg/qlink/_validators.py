import math

from .exceptions import ValidationError


class Validators:
    @staticmethod
    def positive(name: str, value: float) -> None:
        """
        Validate that a physical quantity is a finite number strictly greater than zero.

        Args:
            name (str): Field name used in the error message.
            value (int, float): The value to check.

        Raises:
            ValidationError: The value is not a number or is not > 0.
        """
        Validators.number(name, value)

        if not value > 0:
            raise ValidationError(f"{name} must be > 0, got {value}.")

    @staticmethod
    def non_negative(name: str, value: float) -> None:
        """
        Validate that a value is a number greater than or equal to zero.

        Raises:
            ValidationError: The value is not a number or is negative.
        """
        Validators.number(name, value)

        if value < 0:
            raise ValidationError(f"{name} must be >= 0, got {value}.")

    @staticmethod
    def probability(name: str, value: float) -> None:
        """
        Validate that a value is a probability or an efficiency.

        Raises:
            ValidationError: The value does not lie in [0, 1].
        """
        Validators.number(name, value)

        if not 0.0 <= value <= 1.0:
            raise ValidationError(f"{name} must lie in [0, 1], got {value}.")

    @staticmethod
    def at_least(name: str, value: float, bound: float) -> None:
        Validators.number(name, value)

        if value < bound:
            raise ValidationError(f"{name} must be >= {bound}, got {value}.")

    @staticmethod
    def integer_at_least(name: str, value: int, bound: int) -> None:
        """
        Validate counts such as nesting levels, temporal modes or memory pairs.

        Raises:
            ValidationError: The value is not an integer or is smaller than the bound.
        """
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer, got {value!r}.")

        if value < bound:
            raise ValidationError(f"{name} must be >= {bound}, got {value}.")

    @staticmethod
    def number(name: str, value: float) -> None:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ValidationError(f"{name} must be a number, got {value!r}.")

        if math.isnan(value):
            raise ValidationError(f"{name} must not be NaN.")
