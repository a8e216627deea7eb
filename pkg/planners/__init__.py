"""Online tree-search planners."""

from planners.pomcp import HistoryStep, Planner, SearchNode, pomcp_plan
from planners.ucb import select_ucb1, ucb1_score

__all__ = ["HistoryStep", "Planner", "SearchNode", "pomcp_plan", "select_ucb1", "ucb1_score"]
