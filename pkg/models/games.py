"""Models for empirical game data files and mixed profiles."""

from pydantic import BaseModel, ConfigDict, Field, model_validator

from models.market import MIXTURE_TOLERANCE


class RoleSpec(BaseModel):
    """A role with its player count and strategy names."""

    model_config = ConfigDict(frozen=True)

    name: str
    count: int = Field(..., ge=1)
    strategies: list[str] = Field(..., min_length=1)


class ProfileEntry(BaseModel):
    """Mean payoffs observed for one pure-strategy profile."""

    counts: dict[str, dict[str, int]] = Field(..., description="role -> strategy -> player count")
    payoffs: dict[str, dict[str, float]] = Field(..., description="role -> strategy -> mean payoff")


class GameData(BaseModel):
    """Structured-text form of a role-symmetric empirical game."""

    roles: list[RoleSpec] = Field(..., min_length=1)
    profiles: list[ProfileEntry] = Field(default_factory=list)

    model_config = ConfigDict(
        json_schema_extra={
            "example": {
                "roles": [{"name": "all", "count": 2, "strategies": ["H", "D"]}],
                "profiles": [
                    {"counts": {"all": {"H": 2}}, "payoffs": {"all": {"H": -1.0}}},
                    {"counts": {"all": {"H": 1, "D": 1}}, "payoffs": {"all": {"H": 2.0, "D": 0.0}}},
                    {"counts": {"all": {"D": 2}}, "payoffs": {"all": {"D": 1.0}}},
                ],
            }
        }
    )

    @model_validator(mode="after")
    def _check_profiles(self) -> "GameData":
        roles = {role.name: role for role in self.roles}
        for entry in self.profiles:
            if set(entry.counts) != set(roles):
                raise ValueError(f"Profile roles {sorted(entry.counts)} do not match {sorted(roles)}")
            for name, counts in entry.counts.items():
                unknown = set(counts) - set(roles[name].strategies)
                if unknown:
                    raise ValueError(f"Unknown strategies {sorted(unknown)} for role '{name}'")
                if sum(counts.values()) != roles[name].count:
                    raise ValueError(f"Role '{name}' counts sum to {sum(counts.values())}, expected {roles[name].count}")
        return self


class MixedProfile(BaseModel):
    """Per-role probability vectors over the role's strategies."""

    model_config = ConfigDict(frozen=True)

    weights: dict[str, tuple[float, ...]]

    @model_validator(mode="after")
    def _on_simplex(self) -> "MixedProfile":
        for role, weights in self.weights.items():
            if any(w < 0 for w in weights):
                raise ValueError(f"Negative probability in role '{role}': {weights}")
            if abs(sum(weights) - 1.0) > MIXTURE_TOLERANCE:
                raise ValueError(f"Role '{role}' probabilities sum to {sum(weights)}")
        return self
