"""Reference payoffs that learned policies are compared against."""

import numpy as np

from config.logging_config import get_logger
from environments.base import GenerativeEnvironment
from environments.market_env import MarketEnvironment
from harness.agents import AgentPlayer, RandomAgent, StrategyPlayer, random_policy
from harness.bootstrap import estimate_mean
from harness.evaluation import Player, derive_seed, evaluate
from learners.policy import PolicyAgent
from models.experiment import EvalRow
from presets.loader import zi_strategies

# Setup logging
logger = get_logger(__name__)


def evaluation_row(
    label: str,
    payoffs: np.ndarray,
    seed: int,
    resamples: int,
    level: float,
    checkpoint_runs: int | None = None,
    baseline: bool = False,
) -> EvalRow:
    estimate = estimate_mean(payoffs, resamples, level, np.random.default_rng(derive_seed(seed, 1)))
    logger.info(
        f"{label}: mean {estimate.mean:.2f} [{estimate.ci_lo:.2f}, {estimate.ci_hi:.2f}] over {estimate.n} runs"
    )
    return EvalRow(
        label=label,
        checkpoint_runs=checkpoint_runs,
        mean=estimate.mean,
        ci_lo=estimate.ci_lo,
        ci_hi=estimate.ci_hi,
        n=estimate.n,
        seed=seed,
        baseline=baseline,
    )


def baseline_suite(
    env: GenerativeEnvironment,
    runs: int,
    seed: int,
    resamples: int = 1000,
    level: float = 0.95,
    workers: int = 1,
    random_policies: int = 0,
    max_steps: int | None = None,
) -> list[EvalRow]:
    """
    Evaluate the standard baselines for an environment.

    Market environments get the mixture against itself, the uniform random
    agent and every ZI pure strategy; other environments get the random
    agent only. Optionally adds randomly generated deterministic policies.
    """
    if random_policies:
        env.require_policy_map()
    players: list[tuple[str, Player]] = []
    if isinstance(env, MarketEnvironment):
        players.append((f"mixture:{env.mixture.name}", StrategyPlayer(None)))
    players.append(("random", AgentPlayer(RandomAgent(env), max_steps)))
    if isinstance(env, MarketEnvironment):
        players.extend((zi.label, StrategyPlayer(zi)) for zi in zi_strategies())

    policy_rng = np.random.default_rng(derive_seed(seed, 2))
    for i in range(random_policies):
        policy = random_policy(env, policy_rng)
        players.append((f"random-policy-{i}", AgentPlayer(PolicyAgent(policy, env), max_steps)))

    rows = []
    for index, (label, player) in enumerate(players):
        row_seed = derive_seed(seed, 3, index)
        payoffs = evaluate(env, player, runs, row_seed, workers)
        rows.append(evaluation_row(label, payoffs, row_seed, resamples, level, baseline=True))
    return rows
