"""
Market simulator wrapped as a generative POMDP for a single self agent.

The self agent is background slot 0; the other background traders draw
pure ZI strategies from a mixture at the start of every run. Rewards
telescope: their sum over a run equals the self agent's final surplus.
"""

import copy
from typing import Hashable, Iterator, NamedTuple, Optional, Sequence

import numpy as np

from config.logging_config import get_logger
from config.market_config import MarketConfig
from environments.base import EnvSample, GenerativeEnvironment, PolicyCell
from environments.tiling import discretize, refined_cells, tile_keys
from exceptions import InvalidActionError, TileConfigMismatchError
from market.accounts import marginal_buy_value, marginal_sell_value
from market.pricing import round_half_up
from market.simulator import MarketSimulation
from market.traders import OrderDecision
from models.environment import ActionKind, MarketAction, Mode, NOOP, Observation, TileConfig
from models.market import EnvironmentPreset, Side, StrategyMixture, ZiParams
from presets.loader import get_mixture, standard_tile_config

# Setup logging
logger = get_logger(__name__)

SELF_INDEX = 0
SEED_BOUND = 2**63


class AccountSnapshot(NamedTuple):
    """Self-agent position at a decision point."""

    inventory: int
    cash: int
    r_hat: float


def action_to_order(action: MarketAction, obs: Observation) -> Optional[OrderDecision]:
    """
    Convert a surplus-demanding action into a limit order.

    BUY prices at r_hat + marginal value of acquiring - surplus; SELL at
    r_hat + marginal value of the unit given up + surplus, rounded half-up.

    Returns:
        The order, or None for NOOP, at the inventory limit, or for a non-positive price
    """
    if action.kind is ActionKind.NOOP:
        return None
    values = np.asarray(obs.private_values, dtype=float)
    if action.kind is ActionKind.BUY:
        private = marginal_buy_value(values, obs.inventory)
        if private is None:
            return None
        price = round_half_up(obs.r_hat + private - action.surplus)
    else:
        private = marginal_sell_value(values, obs.inventory)
        if private is None:
            return None
        price = round_half_up(obs.r_hat + private + action.surplus)
    if price <= 0:
        return None
    return OrderDecision(action.side, price)


def reward_increment(
    prev: AccountSnapshot,
    nxt: AccountSnapshot,
    terminal: bool,
    terminal_private_value: float = 0.0,
) -> float:
    """
    Change in marked-to-expectation wealth between two decision points.

    Returns:
        (I' r_hat' - I r_hat) + (c' - c), plus the held private value on the terminal step
    """
    reward = (nxt.inventory * nxt.r_hat - prev.inventory * prev.r_hat) + (nxt.cash - prev.cash)
    if terminal:
        reward += terminal_private_value
    return float(reward)


def snapshot(simulation: MarketSimulation) -> AccountSnapshot:
    account = simulation.self_account
    return AccountSnapshot(account.inventory, account.cash, simulation.r_hat)


def observe(simulation: MarketSimulation) -> Observation:
    """The self agent's view of a run; carries no other-agent information."""
    account = simulation.self_account
    return Observation(
        time_remaining=simulation.params.horizon - simulation.time,
        fundamental=simulation.fundamental,
        r_hat=simulation.r_hat,
        bid=simulation.book.bid,
        ask=simulation.book.ask,
        inventory=account.inventory,
        cash=account.cash,
        private_values=tuple(float(v) for v in account.private_values),
        role=simulation.self_role,
    )


class MarketEnvironment(GenerativeEnvironment[MarketAction]):
    """Self agent against a fixed other-agent mixture in one environment preset."""

    tabular = True

    def __init__(
        self,
        preset: EnvironmentPreset,
        mixture: StrategyMixture,
        mode: Mode = Mode.NO_FLIP,
        tile_config: Optional[TileConfig] = None,
        market_config: Optional[MarketConfig] = None,
    ):
        self.preset = preset
        self.mixture = mixture
        self.mode = mode
        self.params = preset.market_params(market_config)
        self.tile_config = tile_config or standard_tile_config(preset, tilings=3)
        self.refinement = self.tile_config.refinement()
        self.name = f"market:{preset.name}"

        surpluses = preset.surplus_actions
        self._buys = tuple(MarketAction(kind=ActionKind.BUY, surplus=s) for s in surpluses)
        self._sells = tuple(MarketAction(kind=ActionKind.SELL, surplus=s) for s in surpluses)
        self._actions = (NOOP, *self._buys, *self._sells)
        self._probabilities = np.asarray(mixture.probabilities, dtype=float)
        self._probabilities /= self._probabilities.sum()

        logger.debug(
            f"{self.name} vs {mixture.name} ({mode.value}): {len(self._actions)} actions, "
            f"{len(self.tile_config.tilings)} tiling(s)"
        )

    # ------------------------------------------------------------------
    # Actions

    def actions(self) -> tuple[MarketAction, ...]:
        return self._actions

    def actions_for_role(self, role: Optional[Side]) -> tuple[MarketAction, ...]:
        if role is None:
            return self._actions
        return (NOOP, *(self._buys if role is Side.BUY else self._sells))

    def legal_actions(self, state: MarketSimulation) -> tuple[MarketAction, ...]:
        if self.mode is Mode.FLIP_KNOWN:
            return self.actions_for_role(state.self_role)
        return self._actions

    # ------------------------------------------------------------------
    # Generative model

    def draw_background(self, rng: np.random.Generator) -> list[Optional[ZiParams]]:
        """Pure strategies for every background slot but the self agent's."""
        strategies = self.mixture.strategies
        picks = rng.choice(len(strategies), size=self.params.n_background - 1, p=self._probabilities)
        return [None] + [strategies[i] for i in picks]

    def sample_initial(self, rng: np.random.Generator) -> EnvSample:
        """Run to the self agent's first arrival; terminal with reward 0 if it never arrives."""
        simulation = MarketSimulation(
            self.params,
            self.draw_background(rng),
            self.mixture.market_maker,
            seed=int(rng.integers(SEED_BOUND)),
            self_index=SELF_INDEX,
            assign_roles=self.mode is Mode.FLIP_KNOWN,
        )
        paused = simulation.run()
        return EnvSample(simulation, observe(simulation), 0.0, not paused)

    def generate_sample(
        self,
        state: MarketSimulation,
        action: MarketAction,
        rng: np.random.Generator,
    ) -> EnvSample:
        """
        Apply the action on a reseeded clone and run to the next self arrival or T.

        Raises:
            InvalidActionError: terminal checkpoint or action outside the legal set
        """
        if not state.awaiting_self:
            raise InvalidActionError("The market run has already reached its horizon")
        self.check_action(state, action)

        before = snapshot(state)
        order = action_to_order(action, observe(state))
        simulation = state.clone(int(rng.integers(SEED_BOUND)))
        paused = simulation.resume(order)
        terminal = not paused

        held = simulation.self_account.holding_value() if terminal else 0.0
        reward = reward_increment(before, snapshot(simulation), terminal, held)
        return EnvSample(simulation, observe(simulation), reward, terminal)

    def final_surplus(self, sample: EnvSample) -> float:
        """Self agent's realized payoff I_T r_T + c_T + v_T at a terminal sample."""
        simulation: MarketSimulation = sample.state
        return float(simulation.self_account.payoff(simulation.fundamental))

    def strategy_payoff(self, strategy: Optional[ZiParams], rng: np.random.Generator) -> float:
        """
        Self agent's payoff when it plays a fixed ZI strategy instead of a policy.

        Args:
            strategy: ZI strategy for the self slot; None draws it from the mixture
            rng: Random generator
        """
        background = self.draw_background(rng)
        if strategy is None:
            strategy = self.mixture.strategies[rng.choice(len(self._probabilities), p=self._probabilities)]
        background[SELF_INDEX] = strategy
        simulation = MarketSimulation(
            self.params, background, self.mixture.market_maker, seed=int(rng.integers(SEED_BOUND))
        )
        simulation.run()
        return float(simulation.payoffs()[SELF_INDEX])

    def with_mixture(self, mixture: StrategyMixture) -> "MarketEnvironment":
        """Same preset, mode and tiles against another other-agent mixture."""
        twin = copy.copy(self)
        twin.mixture = mixture
        twin._probabilities = np.asarray(mixture.probabilities, dtype=float)
        twin._probabilities /= twin._probabilities.sum()
        return twin

    def equilibrium_payoff(self, runs: int, rng: np.random.Generator) -> float:
        """
        Mean self payoff when every background trader, self included, plays the
        preset's equilibrium mixture.

        Raises:
            MarketConfigurationError: the preset has no equilibrium mixture
        """
        equilibrium = self.with_mixture(get_mixture(f"{self.preset.name}-eq"))
        return float(np.mean([equilibrium.strategy_payoff(None, rng) for _ in range(runs)]))

    # ------------------------------------------------------------------
    # Discretization

    def _refined_tile(self, obs: Observation) -> int:
        return discretize(obs, self.refinement)

    def observation_key(self, sample: EnvSample) -> Hashable:
        obs: Observation = sample.observation
        return (self._refined_tile(obs), obs.role)

    def feature_keys(self, sample: EnvSample) -> tuple[Hashable, ...]:
        obs: Observation = sample.observation
        return tuple((i, tile, obs.role) for i, tile in enumerate(tile_keys(obs, self.tile_config)))

    @staticmethod
    def _cell_label(tile: int, role: Optional[Side]) -> str:
        return str(tile) if role is None else f"{tile}:{role.value}"

    def policy_cell(self, sample: EnvSample) -> str:
        obs: Observation = sample.observation
        return self._cell_label(self._refined_tile(obs), obs.role)

    def policy_cells(self) -> Iterator[PolicyCell]:
        roles: Sequence[Optional[Side]] = (Side.BUY, Side.SELL) if self.mode is Mode.FLIP_KNOWN else (None,)
        for refined, per_tiling in refined_cells(self.tile_config):
            for role in roles:
                yield PolicyCell(
                    label=self._cell_label(refined, role),
                    feature_keys=tuple((i, tile, role) for i, tile in enumerate(per_tiling)),
                    actions=self.actions_for_role(role),
                )

    def check_tile_config(self, tile_config: Optional[TileConfig]) -> None:
        """
        Raises:
            TileConfigMismatchError: a policy's tiling does not induce this environment's cells
        """
        if tile_config is None or tile_config.refinement() != self.refinement:
            raise TileConfigMismatchError(
                f"Policy tiles {tile_config.refinement() if tile_config else None} do not match "
                f"{self.name} tiles {self.refinement}"
            )

    def parse_action(self, label: str) -> MarketAction:
        action = MarketAction.parse(label)
        if action not in self._actions:
            raise InvalidActionError(f"Action {label} is not in the {self.name} action set")
        return action
