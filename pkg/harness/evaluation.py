"""Repeated independent runs of an agent or strategy, optionally across worker processes."""

from concurrent.futures import ProcessPoolExecutor, as_completed
from typing import Callable, Optional, Sequence, Union

import numpy as np

from config.logging_config import get_logger
from environments.base import GenerativeEnvironment
from harness.agents import Agent, AgentPlayer
from learners.policy import PolicyAgent
from models.policy import GreedyPolicy

# Setup logging
logger = get_logger(__name__)

Player = Callable[[GenerativeEnvironment, np.random.Generator], float]


def derive_seed(master: int, *path: int) -> int:
    """Stable 32-bit seed for a labelled sub-stream of the master seed."""
    return int(np.random.SeedSequence([master, *path]).generate_state(1)[0])


def _play_chunk(env: GenerativeEnvironment, player: Player, seeds: Sequence[np.random.SeedSequence]) -> list[float]:
    return [player(env, np.random.default_rng(s)) for s in seeds]


def evaluate(
    env: GenerativeEnvironment,
    player: Player,
    runs: int,
    seed: int,
    workers: int = 1,
) -> np.ndarray:
    """
    Payoffs of runs independent episodes, in run order.

    Run i always uses the i-th child of SeedSequence(seed), so the result
    does not depend on the number of workers.
    """
    seeds = np.random.SeedSequence(seed).spawn(runs)
    if workers <= 1 or runs < 2:
        return np.asarray(_play_chunk(env, player, seeds), dtype=float)

    chunks = [list(c) for c in np.array_split(np.arange(runs), min(workers, runs)) if len(c)]
    results: dict[int, list[float]] = {}
    with ProcessPoolExecutor(max_workers=workers) as executor:
        futures = {
            executor.submit(_play_chunk, env, player, [seeds[i] for i in chunk]): index
            for index, chunk in enumerate(chunks)
        }
        for future in as_completed(futures):
            results[futures[future]] = future.result()
    return np.asarray([p for index in range(len(chunks)) for p in results[index]], dtype=float)


def evaluate_policy(
    policy: Union[GreedyPolicy, Agent],
    env: GenerativeEnvironment,
    runs: int,
    seed: int,
    workers: int = 1,
    max_steps: Optional[int] = None,
) -> np.ndarray:
    """
    Per-run payoffs of a recorded policy or a live agent such as a planner.

    Raises:
        TileConfigMismatchError: the policy was trained on different tiles
    """
    agent = PolicyAgent(policy, env) if isinstance(policy, GreedyPolicy) else policy
    payoffs = evaluate(env, AgentPlayer(agent, max_steps), runs, seed, workers)
    logger.debug(f"{env.name}: {runs} runs, mean {payoffs.mean():.3f}")
    return payoffs
