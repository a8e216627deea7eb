"""Generative environment contract shared by the market adapter and the benchmarks."""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Generic, Hashable, Iterator, Optional, Sequence, TypeVar

import numpy as np

from exceptions import InvalidActionError, NoPolicyMapError
from models.environment import TileConfig

ActionT = TypeVar("ActionT", bound=Hashable)


@dataclass(frozen=True, slots=True)
class EnvSample:
    """
    One draw from the generative model.

    state is the hidden state (a checkpoint); observation is what the agent
    sees. Terminal samples accept no further actions.
    """

    state: Any
    observation: Any
    reward: float
    terminal: bool


@dataclass(frozen=True, slots=True)
class PolicyCell:
    """One cell of a policy map: its label, the feature keys behind it and its legal actions."""

    label: str
    feature_keys: tuple[Hashable, ...]
    actions: tuple[Hashable, ...]


class GenerativeEnvironment(ABC, Generic[ActionT]):
    """
    Environment as a generative model: sample an initial state, then sample
    (next state, observation, reward) given a state and an action.

    Implementations never mutate a state passed to generate_sample, so any
    state can be reused as a checkpoint.
    """

    name: str = "environment"
    discount: float = 1.0
    fully_observable: bool = False
    tabular: bool = False
    tile_config: Optional[TileConfig] = None

    @abstractmethod
    def actions(self) -> Sequence[ActionT]:
        """Full action set in tie-break order."""

    @abstractmethod
    def legal_actions(self, state: Any) -> Sequence[ActionT]:
        """Actions allowed in a non-terminal state, in tie-break order."""

    @abstractmethod
    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        """Draw an initial state; its reward is 0."""

    @abstractmethod
    def generate_sample(self, state: Any, action: ActionT, rng: np.random.Generator) -> EnvSample:
        """Draw a successor of state under action."""

    @abstractmethod
    def observation_key(self, sample: EnvSample) -> Hashable:
        """Hashable summary of the observation used to key search-tree histories."""

    def feature_keys(self, sample: EnvSample) -> tuple[Hashable, ...]:
        """Keys a tabular learner stores values under; one per tiling."""
        return (self.observation_key(sample),)

    def policy_cell(self, sample: EnvSample) -> str:
        return str(self.observation_key(sample))

    def require_policy_map(self) -> None:
        """
        Raises:
            NoPolicyMapError: the environment cannot carry a tabular policy
        """
        if not self.tabular:
            raise NoPolicyMapError(
                f"{self.name} has no enumerable observation space, so it cannot carry a tabular policy; "
                "use the planner instead"
            )

    def policy_cells(self) -> Iterator[PolicyCell]:
        """Every cell a greedy policy must decide."""
        self.require_policy_map()
        raise NotImplementedError(f"{type(self).__name__} is tabular but does not list its policy cells")

    def action_label(self, action: ActionT) -> str:
        return str(action)

    def parse_action(self, label: str) -> ActionT:
        for action in self.actions():
            if self.action_label(action) == label:
                return action
        raise InvalidActionError(f"Unknown action '{label}' for {self.name}")

    def check_action(self, state: Any, action: ActionT) -> None:
        """
        Raises:
            InvalidActionError: action is not legal in state
        """
        if action not in self.legal_actions(state):
            raise InvalidActionError(f"Action {self.action_label(action)} is not legal in {self.name} here")

    def check_tile_config(self, tile_config: Optional[TileConfig]) -> None:
        """Environments without tile coding accept any policy."""
