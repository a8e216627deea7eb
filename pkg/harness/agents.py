"""Agents the harness can evaluate, and the players that wrap them for worker processes."""

from typing import Hashable, Optional, Protocol

import numpy as np

from config.logging_config import get_logger
from config.planner_config import PlannerConfig
from environments.base import EnvSample, GenerativeEnvironment
from environments.market_env import MarketEnvironment
from learners.policy import PolicyAgent
from models.market import ZiParams
from models.policy import GreedyPolicy, PolicyHeader
from planners.pomcp import Planner

# Setup logging
logger = get_logger(__name__)

PRIOR_STREAM = 2


class Agent(Protocol):
    """Anything that picks actions from samples over one episode at a time."""

    def reset(self, rng: np.random.Generator) -> None: ...

    def act(self, sample: EnvSample, rng: np.random.Generator) -> Hashable: ...

    def observe(self, action: Hashable, sample: EnvSample) -> None: ...


class RandomAgent:
    """Uniform choice among the legal actions."""

    def __init__(self, env: GenerativeEnvironment):
        self.env = env

    def reset(self, rng: np.random.Generator) -> None:
        pass

    def act(self, sample: EnvSample, rng: np.random.Generator) -> Hashable:
        actions = self.env.legal_actions(sample.state)
        return actions[rng.integers(len(actions))]

    def observe(self, action: Hashable, sample: EnvSample) -> None:
        pass


def random_policy(env: GenerativeEnvironment, rng: np.random.Generator, label: str = "random-policy") -> GreedyPolicy:
    """Deterministic policy with a uniformly drawn action in every cell."""
    decisions = {
        cell.label: env.action_label(cell.actions[rng.integers(len(cell.actions))])
        for cell in env.policy_cells()
    }
    header = PolicyHeader(
        environment=env.name,
        tile_config=env.tile_config,
        actions=[env.action_label(a) for a in env.actions()],
        learner=label,
    )
    return GreedyPolicy(header=header, decisions=decisions)


def build_planner(
    env: GenerativeEnvironment,
    seed: int,
    config: Optional[PlannerConfig] = None,
    playouts_per_action: Optional[int] = None,
    value_prior: Optional[float] = None,
) -> Planner:
    """
    Planner with its reward range fixed up front.

    The range comes from warmup rollouts on a stream of its own, so payoffs
    do not depend on how runs are spread over workers. Market planners
    without an explicit value prior start every node at the mean payoff of
    the preset's equilibrium mixture.
    """
    config = config or PlannerConfig()
    if value_prior is None and isinstance(env, MarketEnvironment):
        value_prior = env.equilibrium_payoff(config.prior_runs, np.random.default_rng([seed, PRIOR_STREAM]))
        logger.info(f"{env.name}: value prior {value_prior:.2f} from {config.prior_runs} equilibrium runs")
    planner = Planner(
        env,
        np.random.default_rng(seed),
        config,
        playouts_per_action=playouts_per_action,
        value_prior=value_prior,
    )
    _ = planner.reward_range
    return planner


def run_episode(
    env: GenerativeEnvironment,
    agent: Agent,
    rng: np.random.Generator,
    max_steps: Optional[int] = None,
) -> float:
    """
    Play one episode and return its discounted return.

    Args:
        max_steps: Truncate after this many real steps (for policies that can loop)
    """
    agent.reset(rng)
    sample = env.sample_initial(rng)
    total, scale, steps = 0.0, 1.0, 0
    while not sample.terminal and (max_steps is None or steps < max_steps):
        action = agent.act(sample, rng)
        sample = env.generate_sample(sample.state, action, rng)
        agent.observe(action, sample)
        total += scale * sample.reward
        scale *= env.discount
        steps += 1
    return total


class AgentPlayer:
    """Runs episodes of an agent; picklable so it can cross to worker processes."""

    def __init__(self, agent: Agent, max_steps: Optional[int] = None):
        self.agent = agent
        self.max_steps = max_steps

    def __call__(self, env: GenerativeEnvironment, rng: np.random.Generator) -> float:
        return run_episode(env, self.agent, rng, self.max_steps)


class StrategyPlayer:
    """Self agent plays a fixed ZI strategy, or one drawn from the mixture when strategy is None."""

    def __init__(self, strategy: Optional[ZiParams] = None):
        self.strategy = strategy

    def __call__(self, env: MarketEnvironment, rng: np.random.Generator) -> float:
        return env.strategy_payoff(self.strategy, rng)
