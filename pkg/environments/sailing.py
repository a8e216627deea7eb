"""Sailing on a square lattice under a shifting wind."""

import math
from typing import Iterator, NamedTuple, Optional

import numpy as np

from environments.base import EnvSample, GenerativeEnvironment, PolicyCell
from presets.loader import benchmark_constants

# Headings clockwise from north; odd headings are diagonal
HEADINGS: tuple[tuple[int, int], ...] = (
    (0, 1), (1, 1), (1, 0), (1, -1), (0, -1), (-1, -1), (-1, 0), (-1, 1),
)
NO_TACK = 0


class SailingState(NamedTuple):
    x: int
    y: int
    wind: int   # heading the wind blows from
    tack: int   # 0 before the first move or running dead downwind, else 1 / 2
    steps: int


def wind_angle(heading: int, wind: int) -> int:
    """Angle between heading and the wind's origin in 45 degree units, 0..4."""
    diff = abs(heading - wind) % 8
    return min(diff, 8 - diff)


def tack_of(heading: int, wind: int) -> int:
    """Side the wind comes over: 1 or 2, or 0 when it is dead astern."""
    offset = (heading - wind) % 8
    if offset == 4:
        return NO_TACK
    return 1 if offset < 4 else 2


class Sailing(GenerativeEnvironment[int]):
    """
    Reach the far corner at least cost. Heading straight into the wind is
    illegal, cost falls as the heading turns away from the wind, switching
    tack costs extra, and the wind shifts by 45 degrees at random.
    """

    name = "sailing"
    fully_observable = True
    tabular = True

    def __init__(self, constants: Optional[dict] = None):
        constants = constants or benchmark_constants("sailing")
        self.size: int = constants["size"]
        self.start: tuple[int, int] = tuple(constants["start"])
        self.goal: tuple[int, int] = tuple(constants["goal"])
        self.angle_costs: dict[int, float] = {int(k): v for k, v in constants["angle_costs"].items()}
        self.tack_penalty: float = constants["tack_penalty"]
        self.wind_stay: float = constants["wind_stay_probability"]
        self.max_steps: int = constants["max_steps"]

    def actions(self) -> tuple[int, ...]:
        return tuple(range(len(HEADINGS)))

    def _on_grid(self, x: int, y: int) -> bool:
        return 0 <= x < self.size and 0 <= y < self.size

    def legal_headings(self, x: int, y: int, wind: int) -> tuple[int, ...]:
        return tuple(
            h for h, (dx, dy) in enumerate(HEADINGS)
            if h != wind and self._on_grid(x + dx, y + dy)
        )

    def legal_actions(self, state: SailingState) -> tuple[int, ...]:
        return self.legal_headings(state.x, state.y, state.wind)

    def move_cost(self, heading: int, wind: int, tack: int) -> float:
        """Cost of one move, including any tack penalty."""
        cost = self.angle_costs[wind_angle(heading, wind)]
        if heading % 2 == 1:
            cost *= math.sqrt(2.0)
        new_tack = tack_of(heading, wind)
        if tack != NO_TACK and new_tack != NO_TACK and new_tack != tack:
            cost += self.tack_penalty
        return cost

    def shift_wind(self, wind: int, rng: np.random.Generator) -> int:
        u = rng.random()
        if u < self.wind_stay:
            return wind
        shift = 1 if u < self.wind_stay + (1.0 - self.wind_stay) / 2 else -1
        return (wind + shift) % 8

    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        state = SailingState(*self.start, wind=int(rng.integers(8)), tack=NO_TACK, steps=0)
        return EnvSample(state, state[:4], 0.0, False)

    def generate_sample(self, state: SailingState, action: int, rng: np.random.Generator) -> EnvSample:
        self.check_action(state, action)
        dx, dy = HEADINGS[action]
        cost = self.move_cost(action, state.wind, state.tack)
        new_tack = tack_of(action, state.wind)
        nxt = SailingState(
            state.x + dx,
            state.y + dy,
            self.shift_wind(state.wind, rng),
            new_tack if new_tack != NO_TACK else state.tack,
            state.steps + 1,
        )
        terminal = (nxt.x, nxt.y) == self.goal or nxt.steps >= self.max_steps
        return EnvSample(nxt, nxt[:4], -cost, terminal)

    def observation_key(self, sample: EnvSample) -> tuple[int, int, int, int]:
        return sample.observation

    def policy_cells(self) -> Iterator[PolicyCell]:
        for x in range(self.size):
            for y in range(self.size):
                if (x, y) == self.goal:
                    continue
                for wind in range(8):
                    for tack in (NO_TACK, 1, 2):
                        key = (x, y, wind, tack)
                        yield PolicyCell(str(key), (key,), self.legal_headings(x, y, wind))
