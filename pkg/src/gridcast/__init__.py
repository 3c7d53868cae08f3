"""Bounds, constructions and certificates for 2-limited broadcast domination on grids."""

from .grid import Family, GridGraph, Vertex, ball, distance, make_grid, radius
from .broadcast import Broadcast, cost, is_dominating
from .multipack import (
    FractionalWeighting,
    WeightKind,
    is_feasible_fractional_broadcast,
    is_feasible_multipacking,
    lower_bound_from_multipacking,
    mp_cost,
)

__all__ = [
    "Family", "GridGraph", "Vertex", "ball", "distance", "make_grid", "radius",
    "Broadcast", "cost", "is_dominating",
    "FractionalWeighting", "WeightKind", "mp_cost", "is_feasible_multipacking",
    "is_feasible_fractional_broadcast", "lower_bound_from_multipacking",
]

__version__ = "0.1.0"
