"""Exact profile counts for symmetric games and their deviation-preserving reductions."""

from sympy import binomial

from exceptions import CountOverflowError

INT64_MAX = 2**63 - 1


def _checked(value, what: str) -> int:
    count = int(value)
    if count > INT64_MAX:
        raise CountOverflowError(f"{what} = {count} does not fit in a signed 64-bit integer")
    return count


def profile_count(players: int, strategies: int) -> int:
    """
    Number of symmetric pure-strategy profiles, C(N + S - 1, N).

    Raises:
        ValueError: players or strategies below 1
        CountOverflowError: result exceeds the signed 64-bit range
    """
    if players < 1 or strategies < 1:
        raise ValueError(f"Need at least one player and one strategy, got N={players}, S={strategies}")
    return _checked(binomial(players + strategies - 1, players), f"profile_count({players}, {strategies})")


def dpr_profile_count(reduced_players: int, strategies: int) -> int:
    """
    Profiles a deviation-preserving reduction must sample, S * C(n + S - 2, n - 1).

    Raises:
        ValueError: reduced_players or strategies below 1
        CountOverflowError: result exceeds the signed 64-bit range
    """
    if reduced_players < 1 or strategies < 1:
        raise ValueError(
            f"Need at least one player and one strategy, got n={reduced_players}, S={strategies}"
        )
    return _checked(
        strategies * binomial(reduced_players + strategies - 2, reduced_players - 1),
        f"dpr_profile_count({reduced_players}, {strategies})",
    )
