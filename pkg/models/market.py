"""Models for market parameters, trader strategies and mixtures."""

from enum import Enum

from pydantic import BaseModel, ConfigDict, Field, model_validator

from config.market_config import MarketConfig


MIXTURE_TOLERANCE = 1e-9


class Side(str, Enum):
    """Order side."""

    BUY = "BUY"
    SELL = "SELL"

    @property
    def opposite(self) -> "Side":
        return Side.SELL if self is Side.BUY else Side.BUY


class MarketParams(BaseModel):
    """Full parameterization of one market run."""

    model_config = ConfigDict(frozen=True)

    horizon: int = Field(..., gt=0, description="Total time steps T")
    kappa: float = Field(0.05, ge=0.0, lt=1.0, description="Mean reversion rate")
    r_bar: float = Field(100_000.0, ge=0.0, description="Long-run fundamental mean")
    shock_variance: float = Field(1e6, ge=0.0, description="Per-tick shock variance")
    bg_arrival_rate: float = Field(..., gt=0.0, description="Background trader arrivals per tick")
    mm_arrival_rate: float = Field(0.005, gt=0.0, description="Market maker arrivals per tick")
    n_background: int = Field(25, ge=1, description="Background traders, self agent included")
    max_inventory: int = Field(10, ge=1, description="Largest absolute background inventory")
    private_value_std: float = Field(5000.0, ge=0.0, description="Private value draw std")

    @property
    def private_value_count(self) -> int:
        """Length of each background trader's marginal private value vector."""
        return 2 * self.max_inventory

    @classmethod
    def from_config(
        cls,
        horizon: int,
        bg_arrival_rate: float,
        config: MarketConfig | None = None,
    ) -> "MarketParams":
        """Combine a preset's horizon and arrival rate with the shared market config."""
        config = config or MarketConfig()
        return cls(
            horizon=horizon,
            kappa=config.kappa,
            r_bar=config.r_bar,
            shock_variance=config.shock_variance,
            bg_arrival_rate=bg_arrival_rate,
            mm_arrival_rate=config.mm_arrival_rate,
            n_background=config.n_background,
            max_inventory=config.max_inventory,
            private_value_std=config.private_value_std,
        )


class ZiParams(BaseModel):
    """Zero-intelligence-with-reentry strategy."""

    model_config = ConfigDict(frozen=True)

    r_min: float = Field(..., ge=0.0, description="Lower bound of demanded surplus")
    r_max: float = Field(..., ge=0.0, description="Upper bound of demanded surplus")
    eta: float = Field(..., gt=0.0, le=1.0, description="Market-order threshold fraction")

    @model_validator(mode="after")
    def _check_range(self) -> "ZiParams":
        if self.r_min > self.r_max:
            raise ValueError(f"r_min ({self.r_min}) exceeds r_max ({self.r_max})")
        return self

    @property
    def label(self) -> str:
        return f"ZI({self.r_min:g},{self.r_max:g},{self.eta:g})"


class MmParams(BaseModel):
    """Ladder market maker strategy."""

    model_config = ConfigDict(frozen=True)

    num_rungs: int = Field(..., ge=0, description="Rungs per side (K)")
    rung_size: int = Field(..., gt=0, description="Price gap between rungs (xi)")
    min_spread: int = Field(..., gt=0, description="Gap between the innermost buy and sell rungs")

    @property
    def label(self) -> str:
        return f"MM({self.num_rungs},{self.rung_size},{self.min_spread})"


class MixtureComponent(BaseModel):
    """One ZI strategy and its probability within a mixture."""

    model_config = ConfigDict(frozen=True)

    strategy: ZiParams
    probability: float = Field(..., ge=0.0, le=1.0)


class StrategyMixture(BaseModel):
    """Other-agent profile: a ZI mixture for background traders plus one MM strategy."""

    model_config = ConfigDict(frozen=True)

    name: str = Field(..., description="Preset name, e.g. A-1k-eq")
    background: list[MixtureComponent] = Field(..., min_length=1)
    market_maker: MmParams

    @model_validator(mode="after")
    def _check_probabilities(self) -> "StrategyMixture":
        total = sum(component.probability for component in self.background)
        if abs(total - 1.0) > MIXTURE_TOLERANCE:
            raise ValueError(
                f"Mixture '{self.name}' probabilities sum to {total:.12f}, expected 1 ± {MIXTURE_TOLERANCE}"
            )
        return self

    @property
    def strategies(self) -> list[ZiParams]:
        return [component.strategy for component in self.background]

    @property
    def probabilities(self) -> list[float]:
        return [component.probability for component in self.background]


class EnvironmentPreset(BaseModel):
    """Named market environment: horizon, arrival rate, action surpluses, time thresholds."""

    model_config = ConfigDict(frozen=True)

    name: str
    horizon: int = Field(..., gt=0)
    bg_arrival_rate: float = Field(..., gt=0.0)
    surplus_actions: list[int] = Field(..., min_length=1)
    time_thresholds: list[int] = Field(..., description="Time-remaining thresholds of the base tiling")

    def market_params(self, config: MarketConfig | None = None) -> MarketParams:
        return MarketParams.from_config(self.horizon, self.bg_arrival_rate, config)
