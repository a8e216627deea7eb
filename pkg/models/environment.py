"""Models for the market environment: actions, observations and tilings."""

from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from models.market import Side


class Mode(str, Enum):
    """How the self agent's side is chosen on each arrival."""

    NO_FLIP = "noflip"        # agent picks BUY or SELL itself
    FLIP_KNOWN = "flipknown"  # side is a coin flip revealed in the observation


class ActionKind(str, Enum):
    NOOP = "NOOP"
    BUY = "BUY"
    SELL = "SELL"


class MarketAction(BaseModel):
    """Self-agent action: do nothing, or buy/sell while demanding a surplus."""

    model_config = ConfigDict(frozen=True)

    kind: ActionKind
    surplus: Optional[int] = Field(None, gt=0, description="Demanded surplus (price units)")

    @model_validator(mode="after")
    def _check_surplus(self) -> "MarketAction":
        if self.kind is ActionKind.NOOP and self.surplus is not None:
            raise ValueError("NOOP carries no surplus")
        if self.kind is not ActionKind.NOOP and self.surplus is None:
            raise ValueError(f"{self.kind.value} requires a surplus")
        return self

    @property
    def side(self) -> Optional[Side]:
        if self.kind is ActionKind.NOOP:
            return None
        return Side(self.kind.value)

    def __str__(self) -> str:
        if self.kind is ActionKind.NOOP:
            return "NOOP"
        return f"{self.kind.value}:{self.surplus}"

    @classmethod
    def parse(cls, label: str) -> "MarketAction":
        """Inverse of str(): 'NOOP', 'BUY:30', 'SELL:120'."""
        if label == "NOOP":
            return NOOP
        kind, _, surplus = label.partition(":")
        return cls(kind=ActionKind(kind), surplus=int(surplus))


NOOP = MarketAction(kind=ActionKind.NOOP)


class Observation(BaseModel):
    """What the self agent sees at one of its arrivals."""

    model_config = ConfigDict(frozen=True)

    time_remaining: int = Field(..., ge=0, description="T - t")
    fundamental: float = Field(..., ge=0.0, description="Current fundamental r_t")
    r_hat: float = Field(..., description="Expected final fundamental at this tick")
    bid: Optional[int] = Field(None, description="Best resting BUY price")
    ask: Optional[int] = Field(None, description="Best resting SELL price")
    inventory: int = 0
    cash: int = 0
    private_values: tuple[float, ...] = Field(default_factory=tuple)
    role: Optional[Side] = Field(None, description="Assigned side in FlipKnown mode")


class Tiling(BaseModel):
    """One partition of (surplusBuyAtAsk, surplusSellAtBid, time remaining)."""

    model_config = ConfigDict(frozen=True)

    buy_thresholds: tuple[float, ...]
    sell_thresholds: tuple[float, ...]
    time_thresholds: tuple[float, ...] = ()

    @field_validator("buy_thresholds", "sell_thresholds", "time_thresholds")
    @classmethod
    def _strictly_ascending(cls, thresholds: tuple[float, ...]) -> tuple[float, ...]:
        if any(b <= a for a, b in zip(thresholds, thresholds[1:])):
            raise ValueError(f"Thresholds must be strictly ascending: {thresholds}")
        return thresholds

    @property
    def tile_count(self) -> int:
        return (
            (len(self.buy_thresholds) + 1)
            * (len(self.sell_thresholds) + 1)
            * (len(self.time_thresholds) + 1)
        )


class TileConfig(BaseModel):
    """One or more tilings over the learner's observation features."""

    model_config = ConfigDict(frozen=True)

    tilings: tuple[Tiling, ...] = Field(..., min_length=1)

    def refinement(self) -> Tiling:
        """Common refinement of all tilings (the finest partition they induce together)."""
        return Tiling(
            buy_thresholds=tuple(sorted({x for t in self.tilings for x in t.buy_thresholds})),
            sell_thresholds=tuple(sorted({x for t in self.tilings for x in t.sell_thresholds})),
            time_thresholds=tuple(sorted({x for t in self.tilings for x in t.time_thresholds})),
        )
