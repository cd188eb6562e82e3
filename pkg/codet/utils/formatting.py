"""Number formatting for console tables."""

import math


def format_number(n: float | int | None, precision: int = 6) -> str:
    """
    Format a number for display.

    - None displayed as "-"
    - Integers and integral floats displayed without decimal
    - Other floats rounded to `precision` significant digits
    """
    if n is None:
        return "-"
    if isinstance(n, bool):
        return str(n).lower()
    if isinstance(n, float):
        if math.isnan(n) or math.isinf(n):
            return str(n)
        if n.is_integer() and abs(n) < 1e15:
            return str(int(n))
        return f"{n:.{precision}g}"
    return str(n)


def format_error_value(n: float) -> str:
    """Scientific notation for error magnitudes."""
    return f"{n:.2e}"
