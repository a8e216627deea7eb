"""Models for recorded greedy policies."""

from pathlib import Path
from typing import Optional

from pydantic import BaseModel, ConfigDict, Field

from models.environment import Mode, TileConfig


class PolicyHeader(BaseModel):
    """Provenance of a recorded policy."""

    model_config = ConfigDict(
        frozen=True,
        json_schema_extra={
            "example": {
                "environment": "market:A-1k",
                "mixture": "A-1k-eq",
                "mode": "noflip",
                "actions": ["NOOP", "BUY:30", "SELL:30"],
                "learner": "sarsa_lambda",
                "training_runs": 1000,
            }
        },
    )

    environment: str = Field(..., description="Environment name, e.g. market:A-1k")
    mixture: Optional[str] = Field(None, description="Other-agent mixture the policy was trained against")
    mode: Optional[Mode] = None
    tile_config: Optional[TileConfig] = Field(None, description="Tiling used while training")
    actions: list[str] = Field(..., description="Action labels in tie-break order")
    learner: str = Field("", description="Learner that produced the policy")
    training_runs: int = Field(0, ge=0, description="Training episodes before recording")


class GreedyPolicy(BaseModel):
    """Total map from policy cell to action label."""

    model_config = ConfigDict(frozen=True)

    header: PolicyHeader
    decisions: dict[str, str] = Field(..., description="Cell key -> action label")

    def action_label(self, cell: str) -> str:
        """Decision for a cell; cells never seen in training fall back to the first action."""
        return self.decisions.get(cell, self.header.actions[0])

    def save(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.model_dump_json(indent=2))
        return path

    @classmethod
    def load(cls, path: Path) -> "GreedyPolicy":
        return cls.model_validate_json(Path(path).read_text())
