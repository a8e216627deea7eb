"""Role-symmetric empirical games built from per-profile mean payoffs."""

import json
from itertools import product
from math import prod
from pathlib import Path
from typing import Mapping, Optional, Sequence

import numpy as np
from sympy.ntheory.multinomial import multinomial_coefficients

from config.logging_config import get_logger
from exceptions import GameDataError
from models.games import GameData, MixedProfile, ProfileEntry, RoleSpec

# Setup logging
logger = get_logger(__name__)

ProfileKey = tuple[tuple[int, ...], ...]
Profile = dict[str, np.ndarray]


class EmpiricalGame:
    """
    Payoff table of a role-symmetric game.

    Payoffs depend only on how many players of each role play each strategy.
    For every role the expected payoff of each pure deviation against a
    mixed profile is a polynomial in the mixture weights; its terms are
    precomputed once from the profile table.
    """

    def __init__(self, data: GameData):
        self.roles: list[RoleSpec] = list(data.roles)
        self.role_names = [role.name for role in self.roles]
        self._table: dict[ProfileKey, dict[str, dict[str, float]]] = {}
        for entry in data.profiles:
            self._table[self._key(entry)] = entry.payoffs

        self._coefficients: dict[str, np.ndarray] = {}
        self._exponents: dict[str, np.ndarray] = {}
        self._payoffs: dict[str, np.ndarray] = {}
        for index, role in enumerate(self.roles):
            self._precompute(index, role)

        values = [p for payoffs in self._payoffs.values() for p in payoffs.ravel()]
        self.min_payoff = float(min(values))
        self.max_payoff = float(max(values))
        logger.debug(f"Game with roles {self.role_names}: {len(self._table)} profiles")

    # ------------------------------------------------------------------
    # Construction

    def _key(self, entry: ProfileEntry) -> ProfileKey:
        return tuple(
            tuple(entry.counts[role.name].get(s, 0) for s in role.strategies)
            for role in self.roles
        )

    def _lookup(self, key: ProfileKey, role: RoleSpec, strategy: str) -> float:
        payoffs = self._table.get(key)
        if payoffs is None or strategy not in payoffs.get(role.name, {}):
            raise GameDataError(f"No payoff for {role.name}:{strategy} in profile {key}")
        return float(payoffs[role.name][strategy])

    def _precompute(self, index: int, role: RoleSpec) -> None:
        opponents = [
            list(multinomial_coefficients(len(r.strategies), r.count - (1 if i == index else 0)).items())
            for i, r in enumerate(self.roles)
        ]
        coefficients, exponents, payoffs = [], [], []
        for combo in product(*opponents):
            counts = [list(config) for config, _ in combo]
            row = []
            for s, strategy in enumerate(role.strategies):
                counts[index][s] += 1
                row.append(self._lookup(tuple(tuple(c) for c in counts), role, strategy))
                counts[index][s] -= 1
            coefficients.append(prod(int(coef) for _, coef in combo))
            exponents.append([c for config, _ in combo for c in config])
            payoffs.append(row)
        self._coefficients[role.name] = np.array(coefficients, dtype=float)
        self._exponents[role.name] = np.array(exponents, dtype=float)
        self._payoffs[role.name] = np.array(payoffs, dtype=float)

    @classmethod
    def from_json(cls, path: Path) -> "EmpiricalGame":
        """
        Raises:
            pydantic.ValidationError: malformed game file
            GameDataError: a profile needed for deviation payoffs is missing
        """
        return cls(GameData.model_validate(json.loads(Path(path).read_text())))

    @classmethod
    def from_symmetric_matrix(
        cls,
        matrix: Sequence[Sequence[float]],
        strategies: Optional[Sequence[str]] = None,
    ) -> "EmpiricalGame":
        """Two-player symmetric game; matrix[i][j] is the payoff of i against j."""
        matrix = np.asarray(matrix, dtype=float)
        names = list(strategies or [f"s{i}" for i in range(len(matrix))])
        profiles = []
        for i in range(len(names)):
            for j in range(i, len(names)):
                if i == j:
                    counts = {names[i]: 2}
                    payoffs = {names[i]: float(matrix[i, i])}
                else:
                    counts = {names[i]: 1, names[j]: 1}
                    payoffs = {names[i]: float(matrix[i, j]), names[j]: float(matrix[j, i])}
                profiles.append(ProfileEntry(counts={"all": counts}, payoffs={"all": payoffs}))
        return cls(GameData(roles=[RoleSpec(name="all", count=2, strategies=names)], profiles=profiles))

    @classmethod
    def from_bimatrix(cls, row_payoffs: Sequence[Sequence[float]], column_payoffs: Sequence[Sequence[float]]) -> "EmpiricalGame":
        """Two-role game with one player per role."""
        a, b = np.asarray(row_payoffs, dtype=float), np.asarray(column_payoffs, dtype=float)
        rows = [f"r{i}" for i in range(a.shape[0])]
        cols = [f"c{j}" for j in range(a.shape[1])]
        profiles = [
            ProfileEntry(
                counts={"row": {rows[i]: 1}, "column": {cols[j]: 1}},
                payoffs={"row": {rows[i]: float(a[i, j])}, "column": {cols[j]: float(b[i, j])}},
            )
            for i in range(len(rows))
            for j in range(len(cols))
        ]
        roles = [RoleSpec(name="row", count=1, strategies=rows), RoleSpec(name="column", count=1, strategies=cols)]
        return cls(GameData(roles=roles, profiles=profiles))

    # ------------------------------------------------------------------
    # Profiles

    def as_arrays(self, profile: MixedProfile | Mapping[str, Sequence[float]]) -> Profile:
        weights = profile.weights if isinstance(profile, MixedProfile) else profile
        return {role.name: np.asarray(weights[role.name], dtype=float) for role in self.roles}

    def as_model(self, profile: Profile) -> MixedProfile:
        return MixedProfile(weights={name: tuple(float(w) for w in v) for name, v in profile.items()})

    def uniform_profile(self) -> Profile:
        return {role.name: np.full(len(role.strategies), 1.0 / len(role.strategies)) for role in self.roles}

    def random_profile(self, rng: np.random.Generator) -> Profile:
        """Uniform draw from the product of simplices."""
        return {role.name: rng.dirichlet(np.ones(len(role.strategies))) for role in self.roles}

    # ------------------------------------------------------------------
    # Payoffs

    def deviation_payoffs(self, profile: MixedProfile | Mapping[str, Sequence[float]]) -> Profile:
        """Expected payoff of each pure strategy of each role against the profile."""
        arrays = self.as_arrays(profile)
        flat = np.concatenate([arrays[name] for name in self.role_names])
        result = {}
        for name in self.role_names:
            weights = self._coefficients[name] * np.prod(flat ** self._exponents[name], axis=1)
            result[name] = weights @ self._payoffs[name]
        return result

    def expected_payoffs(self, profile: MixedProfile | Mapping[str, Sequence[float]]) -> dict[str, float]:
        arrays = self.as_arrays(profile)
        deviations = self.deviation_payoffs(arrays)
        return {name: float(arrays[name] @ deviations[name]) for name in self.role_names}
