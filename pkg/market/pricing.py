"""Integer price helpers."""

import math


def round_half_up(value: float) -> int:
    """Round to the nearest integer, halves upward (also for negatives: -2.5 -> -2)."""
    return math.floor(value + 0.5)
