"""Exception hierarchy shared by the simulator, learners, planners and harness."""

from typing import Any


class MarketConfigurationError(ValueError):
    """Market run cannot start: missing strategies, wrong agent counts, bad mixtures."""


class InvalidOrderError(ValueError):
    """Order with a non-positive price or a non-unit quantity."""


class InvalidActionError(ValueError):
    """Action outside the environment's legal action set for the current state."""


class TileConfigMismatchError(ValueError):
    """Policy was trained on a tile partition that differs from the environment's."""


class CountOverflowError(ValueError):
    """Profile count does not fit in a signed 64-bit integer."""


class DegenerateProfileError(ValueError):
    """Replicator update produced an all-zero weight vector."""


class GameDataError(ValueError):
    """Empirical game is missing payoff data for a queried profile."""


class InsufficientSamplesError(ValueError):
    """Bootstrap requested on fewer than two samples."""


class NoPolicyMapError(ValueError):
    """Environment has no enumerable observation space, so no tabular policy can cover it."""


class BeliefStarvationError(RuntimeError):
    """
    Rejection sampling hit its attempt cap before collecting enough particles.

    The particles found so far travel with the exception so callers can fall
    back to them.
    """

    def __init__(self, message: str, particles: list[Any], attempts: int):
        super().__init__(message)
        self.particles = particles
        self.attempts = attempts


__all__ = [
    "MarketConfigurationError",
    "InvalidOrderError",
    "InvalidActionError",
    "TileConfigMismatchError",
    "CountOverflowError",
    "DegenerateProfileError",
    "GameDataError",
    "InsufficientSamplesError",
    "BeliefStarvationError",
]
