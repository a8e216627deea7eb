"""Market simulator configuration."""

from pydantic import Field
from pydantic_settings import BaseSettings


class MarketConfig(BaseSettings):
    """Constants shared by every market environment preset."""

    # Fundamental process
    r_bar: float = Field(
        100_000.0,
        alias="MARKET_R_BAR",
        ge=0.0,
        description="Long-run mean of the fundamental value (price units)"
    )

    kappa: float = Field(
        0.05,
        alias="MARKET_KAPPA",
        ge=0.0,
        lt=1.0,
        description="Mean reversion rate of the fundamental"
    )

    shock_variance: float = Field(
        1e6,
        alias="MARKET_SHOCK_VARIANCE",
        ge=0.0,
        description="Variance of the per-tick fundamental shock"
    )

    # Agents
    n_background: int = Field(
        25,
        alias="MARKET_N_BACKGROUND",
        ge=1,
        description="Number of background traders, self agent included"
    )

    mm_arrival_rate: float = Field(
        0.005,
        alias="MARKET_MM_ARRIVAL_RATE",
        gt=0.0,
        description="Market maker arrivals per tick"
    )

    max_inventory: int = Field(
        10,
        alias="MARKET_MAX_INVENTORY",
        ge=1,
        description="Largest absolute inventory a background trader can hold"
    )

    private_value_std: float = Field(
        5000.0,
        alias="MARKET_PRIVATE_VALUE_STD",
        ge=0.0,
        description="Standard deviation of each marginal private value draw"
    )

    model_config = {
        "env_file": ".env",
        "env_prefix": "MARKET_",
        "case_sensitive": False,
        "extra": "ignore",
        "populate_by_name": True,
    }
