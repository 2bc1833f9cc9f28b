"""Recurrences used throughout the tests and demos, in the JSON input format."""
from __future__ import annotations

from .recurrence import RecurrenceSpec

FIXTURES: dict[str, dict] = {
    # f(n) = f(n-1) + f(n-2); only zero at n = 0
    "fibonacci": {"order": 2, "offset": 2, "coefficients": [["1"], ["1"]], "initial": ["0", "1"]},
    # 0, 1, 0, 1, ...
    "alternating": {"order": 2, "offset": 2, "coefficients": [[], ["1"]], "initial": ["0", "1"]},
    # f(n) = ((n-1)/2) f(n-2) + 2 f(n-4): odd terms grow like factorials, even terms vanish
    "interleaved": {
        "order": 4,
        "offset": 5,
        "coefficients": [[], ["-1/2", "1/2"], [], ["2"]],
        "initial": ["0", "1", "0", "3", "0"],
    },
    # Lucas numbers, never zero
    "lucas": {"order": 2, "offset": 2, "coefficients": [["1"], ["1"]], "initial": ["2", "1"]},
    # 1, 2, 0, 0, 0, ...
    "eventually_zero": {"order": 2, "offset": 4, "coefficients": [["1"], ["1"]], "initial": ["1", "2", "0", "0"]},
    # trailing coefficient n^2 + n + 1, which has no roots mod 5
    "extension": {"order": 2, "offset": 2, "coefficients": [["1"], ["1", "1", "1"]], "initial": ["0", "1"]},
    # (n+1) f(n+1) = 2(2n+1) f(n), written as n f(n) = (4n - 2) f(n-1)
    "central_binomial": {
        "order": 1,
        "offset": 1,
        "leading": ["0", "1"],
        "coefficients": [["-2", "4"]],
        "initial": ["1"],
    },
    # trailing coefficient n: no prime avoids its roots
    "trailing_root": {"order": 2, "offset": 2, "coefficients": [["1"], ["0", "1"]], "initial": ["0", "1"]},
}

CORPUS = ("fibonacci", "alternating", "interleaved", "lucas", "eventually_zero")


def fixture(name: str) -> RecurrenceSpec:
    return RecurrenceSpec.from_json(FIXTURES[name])
