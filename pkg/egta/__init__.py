"""Counting, empirical games and replicator dynamics for equilibrium context."""

from egta.counting import dpr_profile_count, profile_count
from egta.game import EmpiricalGame
from egta.replicator import (
    ReplicatorResult,
    find_equilibria,
    mixture_from_profile,
    regret,
    replicator_dynamics,
    replicator_step,
)

__all__ = [
    "EmpiricalGame",
    "ReplicatorResult",
    "dpr_profile_count",
    "find_equilibria",
    "mixture_from_profile",
    "profile_count",
    "regret",
    "replicator_dynamics",
    "replicator_step",
]
