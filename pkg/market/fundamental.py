"""Mean-reverting fundamental value process."""

from models.market import MarketParams


def step_fundamental(r_t: float, params: MarketParams, shock: float) -> float:
    """
    Advance the fundamental by one tick.

    Args:
        r_t: Current fundamental value
        params: Market parameters (kappa, r_bar)
        shock: Gaussian draw with variance params.shock_variance, supplied by the caller

    Returns:
        max(0, kappa * r_bar + (1 - kappa) * (r_t + shock))
    """
    return max(0.0, params.kappa * params.r_bar + (1.0 - params.kappa) * (r_t + shock))


def expected_final_fundamental(r_t: float, t: int, params: MarketParams) -> float:
    """
    Expected fundamental at the horizon given its value at tick t.

    Ignores the truncation at zero, which is negligible around r_bar.
    """
    decay = (1.0 - params.kappa) ** (params.horizon - t)
    return (1.0 - decay) * params.r_bar + decay * r_t
