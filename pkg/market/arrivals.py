"""Rounded-exponential arrival scheduling."""

import math
from typing import Optional

import numpy as np

from market.pricing import round_half_up


def interarrival(rate: float, rng: np.random.Generator) -> int:
    """Exponential gap with mean 1/rate, rounded half-up, at least one tick."""
    return max(1, round_half_up(rng.exponential(1.0 / rate)))


def schedule_next_arrival(
    current: int,
    rate: float,
    horizon: int,
    rng: np.random.Generator,
) -> Optional[int]:
    """
    Next arrival tick after current, or None if it falls past the horizon.

    Args:
        current: Tick of the previous arrival (0 before the first)
        rate: Arrivals per tick
        horizon: Last tick T of the run
        rng: Random generator

    Returns:
        current + rounded gap, or None when that exceeds horizon
    """
    tick = current + interarrival(rate, rng)
    return tick if tick <= horizon else None


def conditional_next_arrival(
    last: int,
    now: int,
    rate: float,
    horizon: int,
    rng: np.random.Generator,
    include_now: bool,
) -> Optional[int]:
    """
    Redraw a pending arrival given that the agent has not arrived since last.

    Used after reseeding a cloned run: the agent last arrived at tick last and
    has not arrived through now (or before now, when include_now says an
    arrival at now is still pending). The gap is drawn from the rounded
    exponential law conditioned on being at least the elapsed time, using the
    memorylessness of the unrounded draw.
    """
    min_gap = now - last + (0 if include_now else 1)
    if min_gap <= 1:
        gap = interarrival(rate, rng)
    else:
        # round(X) >= m  <=>  X >= m - 1/2, and X - (m - 1/2) is again exponential
        gap = min_gap + math.floor(rng.exponential(1.0 / rate))
    tick = last + gap
    return tick if tick <= horizon else None
