"""Replicator dynamics, regret and equilibrium search over empirical games."""

from typing import NamedTuple, Optional

import numpy as np

from config.logging_config import get_logger
from egta.game import EmpiricalGame, Profile
from exceptions import DegenerateProfileError, MarketConfigurationError
from models.market import MixtureComponent, MmParams, StrategyMixture
from presets.loader import mm_strategies, zi_strategies

# Setup logging
logger = get_logger(__name__)

FITNESS_FLOOR = 1e-9
TOLERANCE = 1e-8
MAX_ITERATIONS = 100_000
REGRET_THRESHOLD = 1e-3
SUPPORT_THRESHOLD = 1e-3


class ReplicatorResult(NamedTuple):
    profile: Profile
    iterations: int
    converged: bool
    regret: float


def replicator_step(game: EmpiricalGame, profile: Profile) -> Profile:
    """
    One discrete replicator update per role.

    Fitness is shifted by the game's smallest payoff so weights stay
    non-negative; strategies with no weight never come back.

    Raises:
        DegenerateProfileError: a role's updated weights are all zero
    """
    fitness = game.deviation_payoffs(profile)
    updated = {}
    for name in game.role_names:
        weights = np.asarray(profile[name], dtype=float) * (fitness[name] - game.min_payoff + FITNESS_FLOOR)
        total = weights.sum()
        if total <= 0.0:
            raise DegenerateProfileError(f"Role '{name}' weights collapsed to zero from {profile[name]}")
        updated[name] = weights / total
    return updated


def replicator_dynamics(
    game: EmpiricalGame,
    profile: Optional[Profile] = None,
    tolerance: float = TOLERANCE,
    max_iterations: int = MAX_ITERATIONS,
) -> ReplicatorResult:
    """Iterate replicator_step until no coordinate moves more than tolerance."""
    current = profile if profile is not None else game.uniform_profile()
    current = {name: np.asarray(current[name], dtype=float) for name in game.role_names}
    for iteration in range(1, max_iterations + 1):
        nxt = replicator_step(game, current)
        change = max(float(np.max(np.abs(nxt[n] - current[n]))) for n in game.role_names)
        current = nxt
        if change < tolerance:
            return ReplicatorResult(current, iteration, True, regret(game, current))
    return ReplicatorResult(current, max_iterations, False, regret(game, current))


def regret(game: EmpiricalGame, profile: Profile) -> float:
    """Largest gain any role gets from a unilateral pure deviation; 0 at an equilibrium."""
    arrays = game.as_arrays(profile)
    deviations = game.deviation_payoffs(arrays)
    gains = [float(np.max(deviations[n]) - arrays[n] @ deviations[n]) for n in game.role_names]
    return max(0.0, max(gains))


def _distance(a: Profile, b: Profile) -> float:
    return max(float(np.max(np.abs(a[n] - b[n]))) for n in a)


def find_equilibria(
    game: EmpiricalGame,
    restarts: int,
    rng: np.random.Generator,
    regret_threshold: float = REGRET_THRESHOLD,
    max_iterations: int = MAX_ITERATIONS,
    dedupe_distance: float = 1e-3,
) -> list[ReplicatorResult]:
    """
    Run replicator dynamics from the uniform profile and random simplex points.

    Returns:
        Distinct low-regret end points, lowest regret first
    """
    starts = [game.uniform_profile()] + [game.random_profile(rng) for _ in range(restarts)]
    found: list[ReplicatorResult] = []
    failures = 0
    for start in starts:
        result = replicator_dynamics(game, start, max_iterations=max_iterations)
        if not result.converged:
            failures += 1
        if result.regret > regret_threshold:
            continue
        if any(_distance(result.profile, other.profile) < dedupe_distance for other in found):
            continue
        found.append(result)

    if failures:
        logger.warning(f"{failures} of {len(starts)} replicator runs hit {max_iterations} iterations")
    logger.info(f"Found {len(found)} equilibria from {len(starts)} starts")
    return sorted(found, key=lambda r: r.regret)


def mixture_from_profile(
    game: EmpiricalGame,
    profile: Profile,
    name: str,
    background_role: str = "background",
    market_maker_role: str = "market_maker",
    market_maker: Optional[MmParams] = None,
    support_threshold: float = SUPPORT_THRESHOLD,
) -> StrategyMixture:
    """
    Turn a market game profile into an other-agent mixture.

    Background strategy names must be ZI labels such as "ZI(0,250,0.8)".
    The market maker is the most played strategy of the market-maker role,
    or the given one when the game has no such role. Weights below the
    support threshold are dropped and the rest renormalized.

    Raises:
        MarketConfigurationError: unknown strategy labels or no market maker
    """
    zi_by_label = {zi.label: zi for zi in zi_strategies()}
    mm_by_label = {mm.label: mm for mm in mm_strategies()}
    roles = {role.name: role for role in game.roles}
    if background_role not in roles:
        raise MarketConfigurationError(f"Game has no '{background_role}' role: {game.role_names}")

    weights = np.asarray(profile[background_role], dtype=float)
    keep = [(s, w) for s, w in zip(roles[background_role].strategies, weights) if w >= support_threshold]
    total = sum(w for _, w in keep)
    components = []
    for label, weight in keep:
        if label not in zi_by_label:
            raise MarketConfigurationError(f"Unknown ZI strategy '{label}'")
        components.append(MixtureComponent(strategy=zi_by_label[label], probability=weight / total))

    if market_maker_role in roles:
        mm_weights = np.asarray(profile[market_maker_role], dtype=float)
        label = roles[market_maker_role].strategies[int(np.argmax(mm_weights))]
        if label not in mm_by_label:
            raise MarketConfigurationError(f"Unknown market maker strategy '{label}'")
        market_maker = mm_by_label[label]
    if market_maker is None:
        raise MarketConfigurationError("No market maker role in the game and none given")

    return StrategyMixture(name=name, background=components, market_maker=market_maker)
