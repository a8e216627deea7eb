"""RockSample: collect good rocks using a noisy long-range sensor, then exit east."""

import math
from typing import NamedTuple, Optional

import numpy as np

from environments.base import EnvSample, GenerativeEnvironment
from exceptions import InvalidActionError
from presets.loader import benchmark_constants

MOVES: dict[str, tuple[int, int]] = {
    "north": (0, 1),
    "south": (0, -1),
    "east": (1, 0),
    "west": (-1, 0),
}
SAMPLE = "sample"


class RockState(NamedTuple):
    x: int
    y: int
    good: int    # bitmask of rocks that are still good
    steps: int


class RockSample(GenerativeEnvironment[str]):
    """
    The rover observes only its position and the answers to its checks.
    Sampling a good rock pays the good reward once and leaves it bad; sampling
    a bad rock pays the bad reward. Moving east off the grid ends the episode
    with the exit reward; other off-grid moves are illegal.
    """

    name = "rocksample"

    def __init__(self, constants: Optional[dict] = None):
        constants = constants or benchmark_constants("rocksample")
        self.size: int = constants["size"]
        self.rocks: list[tuple[int, int]] = [tuple(r) for r in constants["rocks"]]
        self.start: tuple[int, int] = tuple(constants["start"])
        self.half_efficiency: float = constants["half_efficiency_distance"]
        self.good_reward: float = constants["good_reward"]
        self.bad_reward: float = constants["bad_reward"]
        self.exit_reward: float = constants["exit_reward"]
        self.discount: float = constants["discount"]
        self.max_steps: int = constants["max_steps"]
        self._rock_at = {cell: i for i, cell in enumerate(self.rocks)}
        self._checks = tuple(f"check-{i}" for i in range(len(self.rocks)))

    def actions(self) -> tuple[str, ...]:
        return (*MOVES, SAMPLE, *self._checks)

    def legal_actions(self, state: RockState) -> tuple[str, ...]:
        moves = tuple(
            m for m, (dx, dy) in MOVES.items()
            if m == "east" or (0 <= state.x + dx < self.size and 0 <= state.y + dy < self.size)
        )
        sample = (SAMPLE,) if (state.x, state.y) in self._rock_at else ()
        return (*moves, *sample, *self._checks)

    def sensor_accuracy(self, distance: float) -> float:
        """Probability a check reports the true label; 1 at distance 0, towards 1/2 far away."""
        return (1.0 + 2.0 ** (-distance / self.half_efficiency)) / 2.0

    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        good = int(sum(1 << i for i in range(len(self.rocks)) if rng.random() < 0.5))
        return EnvSample(RockState(*self.start, good=good, steps=0), None, 0.0, False)

    def generate_sample(self, state: RockState, action: str, rng: np.random.Generator) -> EnvSample:
        if action not in self.legal_actions(state):
            raise InvalidActionError(f"{action} is not legal at ({state.x}, {state.y})")
        steps = state.steps + 1
        truncated = steps >= self.max_steps

        if action in MOVES:
            dx, dy = MOVES[action]
            x, y = state.x + dx, state.y + dy
            if x >= self.size:
                return EnvSample(RockState(x, y, state.good, steps), None, self.exit_reward, True)
            return EnvSample(RockState(x, y, state.good, steps), None, 0.0, truncated)

        if action == SAMPLE:
            rock = self._rock_at[(state.x, state.y)]
            bit = 1 << rock
            reward = self.good_reward if state.good & bit else self.bad_reward
            return EnvSample(RockState(state.x, state.y, state.good & ~bit, steps), None, reward, truncated)

        rock = self._checks.index(action)
        rx, ry = self.rocks[rock]
        accuracy = self.sensor_accuracy(math.hypot(rx - state.x, ry - state.y))
        truth = bool((state.good >> rock) & 1)
        reading = truth if rng.random() < accuracy else not truth
        return EnvSample(state._replace(steps=steps), "good" if reading else "bad", 0.0, truncated)

    def observation_key(self, sample: EnvSample) -> Optional[str]:
        return sample.observation
