"""Shortest-path maze with barriers and a single goal."""

from collections import deque
from typing import Iterator, Optional

import numpy as np

from environments.base import EnvSample, GenerativeEnvironment, PolicyCell
from presets.loader import benchmark_constants

Cell = tuple[int, int]

MOVES: dict[str, Cell] = {
    "up": (0, -1),
    "down": (0, 1),
    "left": (-1, 0),
    "right": (1, 0),
}


class GridWorld(GenerativeEnvironment[str]):
    """
    Deterministic maze. Every step costs the step reward; blocked and
    off-grid moves leave the agent in place. Starts are uniform over free
    non-goal cells.
    """

    name = "gridworld"
    fully_observable = True
    tabular = True

    def __init__(self, constants: Optional[dict] = None):
        constants = constants or benchmark_constants("gridworld")
        self.width: int = constants["width"]
        self.height: int = constants["height"]
        self.walls: frozenset[Cell] = frozenset(tuple(w) for w in constants["walls"])
        self.goal: Cell = tuple(constants["goal"])
        self.step_reward: float = constants["step_reward"]
        self.starts: list[Cell] = [
            (x, y)
            for y in range(self.height)
            for x in range(self.width)
            if (x, y) not in self.walls and (x, y) != self.goal
        ]

    def actions(self) -> tuple[str, ...]:
        return tuple(MOVES)

    def legal_actions(self, state: Cell) -> tuple[str, ...]:
        return tuple(MOVES)

    def move(self, cell: Cell, action: str) -> Cell:
        dx, dy = MOVES[action]
        x, y = cell[0] + dx, cell[1] + dy
        if not (0 <= x < self.width and 0 <= y < self.height) or (x, y) in self.walls:
            return cell
        return x, y

    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        start = self.starts[rng.integers(len(self.starts))]
        return EnvSample(start, start, 0.0, False)

    def generate_sample(self, state: Cell, action: str, rng: np.random.Generator) -> EnvSample:
        self.check_action(state, action)
        nxt = self.move(state, action)
        return EnvSample(nxt, nxt, self.step_reward, nxt == self.goal)

    def observation_key(self, sample: EnvSample) -> Cell:
        return sample.observation

    def policy_cells(self) -> Iterator[PolicyCell]:
        for cell in self.starts:
            yield PolicyCell(str(cell), (cell,), self.actions())

    def shortest_distances(self) -> dict[Cell, int]:
        """Steps to the goal from every cell that can reach it (breadth-first from the goal)."""
        distances = {self.goal: 0}
        frontier = deque([self.goal])
        while frontier:
            cell = frontier.popleft()
            for action in MOVES:
                # Moves are reversible, so neighbours of cell are cells one move away
                neighbour = self.move(cell, action)
                if neighbour not in distances:
                    distances[neighbour] = distances[cell] + 1
                    frontier.append(neighbour)
        return distances

    def optimal_mean_return(self) -> float:
        """Mean optimal return over the uniform start distribution."""
        distances = self.shortest_distances()
        return float(np.mean([self.step_reward * distances[cell] for cell in self.starts]))
