"""Solitaire Battleship: sink a hidden fleet, observing only hit or miss."""

from typing import NamedTuple, Optional

import numpy as np

from environments.base import EnvSample, GenerativeEnvironment
from exceptions import InvalidActionError
from presets.loader import benchmark_constants


class BattleshipState(NamedTuple):
    ships: int    # bitmask of cells occupied by any ship
    struck: int   # bitmask of cells already fired at


def ship_masks(size: int, length: int) -> list[int]:
    """Every in-bounds horizontal and vertical placement of one ship."""
    masks = []
    for y in range(size):
        for x in range(size - length + 1):
            masks.append(sum(1 << (y * size + x + i) for i in range(length)))
    for x in range(size):
        for y in range(size - length + 1):
            masks.append(sum(1 << ((y + i) * size + x) for i in range(length)))
    return masks


class Battleship(GenerativeEnvironment[int]):
    """
    Fleet placed uniformly at random without overlap. Each strike costs one
    point and sinking the whole fleet pays the completion reward, so the
    undiscounted return is the number of moves left out of the completion
    reward.
    """

    name = "battleship"

    def __init__(self, constants: Optional[dict] = None):
        constants = constants or benchmark_constants("battleship")
        self.size: int = constants["size"]
        self.fleet: list[int] = list(constants["fleet"])
        self.completion_reward: float = constants["completion_reward"]
        self.strike_reward: float = constants["strike_reward"]
        self.cells = self.size * self.size
        self._placements = {length: ship_masks(self.size, length) for length in set(self.fleet)}

    def actions(self) -> tuple[int, ...]:
        return tuple(range(self.cells))

    def legal_actions(self, state: BattleshipState) -> tuple[int, ...]:
        return tuple(c for c in range(self.cells) if not (state.struck >> c) & 1)

    def place_fleet(self, rng: np.random.Generator) -> int:
        """Uniform non-overlapping placement by rejecting whole fleets."""
        while True:
            occupied = 0
            for length in self.fleet:
                options = self._placements[length]
                mask = options[rng.integers(len(options))]
                if occupied & mask:
                    break
                occupied |= mask
            else:
                return occupied

    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        return EnvSample(BattleshipState(self.place_fleet(rng), 0), None, 0.0, False)

    def generate_sample(self, state: BattleshipState, action: int, rng: np.random.Generator) -> EnvSample:
        self.check_action(state, action)
        bit = 1 << action
        nxt = BattleshipState(state.ships, state.struck | bit)
        hit = bool(state.ships & bit)
        sunk = (nxt.ships & ~nxt.struck) == 0
        reward = self.strike_reward + (self.completion_reward if sunk else 0.0)
        return EnvSample(nxt, hit, reward, sunk)

    def observation_key(self, sample: EnvSample) -> Optional[bool]:
        return sample.observation

    def check_action(self, state: BattleshipState, action: int) -> None:
        if not 0 <= action < self.cells or (state.struck >> action) & 1:
            raise InvalidActionError(f"Cell {action} is off the board or already struck")
