"""Tests for number formatting."""

import pytest

from codet.utils.formatting import format_error_value, format_number


class TestFormatNumber:
    @pytest.mark.parametrize(
        "value,expected",
        [
            (None, "-"),
            (True, "true"),
            (3, "3"),
            (2.0, "2"),
            (0.1234567, "0.123457"),
            (1e-7, "1e-07"),
            (float("inf"), "inf"),
        ],
    )
    def test_values(self, value, expected):
        assert format_number(value) == expected

    def test_precision(self):
        assert format_number(3.14159, precision=3) == "3.14"


class TestFormatErrorValue:
    def test_scientific(self):
        assert format_error_value(0.000123) == "1.23e-04"
