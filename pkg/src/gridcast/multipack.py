"""Exact-rational vertex weightings: fractional multipackings and fractional broadcasts.

A multipacking is feasible when every radius-1 ball carries weight at most 1
and every radius-2 ball at most 2.  A fractional broadcast is feasible when
every vertex j has ``sum x1 over ball(j,1) + sum x2 over ball(j,2) >= 1``.
Weak duality makes any feasible multipacking a lower bound on the broadcast
number.  Everything is computed with :class:`fractions.Fraction`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from types import MappingProxyType
from typing import Mapping, NamedTuple, Optional

from .broadcast import Broadcast
from .errors import InfeasibleCertificate, WrongKind
from .grid import GridGraph, Vertex


class WeightKind(str, Enum):
    Multipacking = "multipacking"
    FractionalBroadcastStrength1 = "fb1"
    FractionalBroadcastStrength2 = "fb2"
    FractionalBroadcastMixed = "fb_mixed"

    @property
    def is_broadcast(self) -> bool:
        return self is not WeightKind.Multipacking


class Feasibility(NamedTuple):
    feasible: bool
    witness: Optional[tuple]  # (Vertex, radius) for multipackings, Vertex for broadcasts

    def __bool__(self) -> bool:
        return self.feasible


def _freeze(g: GridGraph, weights) -> Mapping[Vertex, Fraction]:
    out = {}
    for v, w in dict(weights or {}).items():
        g.check(v)
        w = Fraction(w)
        if w < 0:
            raise ValueError(f"negative weight {w} at {tuple(v)}")
        if w:
            out[Vertex(*v)] = w
    return MappingProxyType(dict(sorted(out.items())))


@dataclass(frozen=True)
class FractionalWeighting:
    """Nonnegative rational weights on the vertices of ``graph``.

    ``weight`` holds y_i for a multipacking and x_{i,1} or x_{i,2} for the
    single-strength broadcast kinds.  The mixed kind keeps x_{i,1} in
    ``weight`` and x_{i,2} in ``weight2``.
    """

    graph: GridGraph
    weight: Mapping[Vertex, Fraction]
    kind: WeightKind = WeightKind.Multipacking
    weight2: Mapping[Vertex, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "kind", WeightKind(self.kind))
        object.__setattr__(self, "weight", _freeze(self.graph, self.weight))
        if self.weight2 and self.kind is not WeightKind.FractionalBroadcastMixed:
            raise WrongKind("weight2 is only meaningful for mixed fractional broadcasts")
        object.__setattr__(self, "weight2", _freeze(self.graph, self.weight2))

    @classmethod
    def uniform(cls, g: GridGraph, value, kind=WeightKind.Multipacking) -> "FractionalWeighting":
        value = Fraction(value)
        return cls(g, {v: value for v in g.vertices()}, kind)

    @classmethod
    def from_rows(cls, g: GridGraph, row_values, kind=WeightKind.Multipacking) -> "FractionalWeighting":
        """Weight every vertex of row i by ``row_values[i]``."""
        if len(row_values) != g.m:
            raise ValueError(f"need {g.m} row values, got {len(row_values)}")
        return cls(g, {v: Fraction(row_values[v.row]) for v in g.vertices()}, kind)

    def strength_parts(self) -> tuple[Mapping[Vertex, Fraction], Mapping[Vertex, Fraction]]:
        """(x1, x2) for broadcast kinds."""
        k = self.kind
        if k is WeightKind.FractionalBroadcastStrength1:
            return self.weight, {}
        if k is WeightKind.FractionalBroadcastStrength2:
            return {}, self.weight
        if k is WeightKind.FractionalBroadcastMixed:
            return self.weight, self.weight2
        raise WrongKind("a multipacking has no strength parts")


def embed_broadcast(b: Broadcast) -> FractionalWeighting:
    """View an integer broadcast as a mixed fractional broadcast of the same cost."""
    x1 = {v: 1 for v, s in b.strength.items() if s == 1}
    x2 = {v: 1 for v, s in b.strength.items() if s == 2}
    return FractionalWeighting(b.graph, x1, WeightKind.FractionalBroadcastMixed, x2)


def mp_cost(w: FractionalWeighting) -> Fraction:
    if w.kind is WeightKind.Multipacking:
        return sum(w.weight.values(), Fraction(0))
    x1, x2 = w.strength_parts()
    return sum(x1.values(), Fraction(0)) + 2 * sum(x2.values(), Fraction(0))


def _dense(g: GridGraph, weights: Mapping[Vertex, Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * g.order
    for v, x in weights.items():
        out[v.row * g.n + v.col] = x
    return out


def is_feasible_multipacking(w: FractionalWeighting) -> Feasibility:
    if w.kind is not WeightKind.Multipacking:
        raise WrongKind(f"expected a multipacking, got {w.kind.value}")
    g = w.graph
    y = _dense(g, w.weight)
    balls = g.ball_indices
    for j in range(g.order):
        for r in (1, 2):
            if sum((y[i] for i in balls[r][j]), Fraction(0)) > r:
                return Feasibility(False, (g.vertex(j), r))
    return Feasibility(True, None)


def is_feasible_fractional_broadcast(w: FractionalWeighting) -> Feasibility:
    if not w.kind.is_broadcast:
        raise WrongKind("expected a fractional broadcast, got a multipacking")
    g = w.graph
    p1, p2 = w.strength_parts()
    x1, x2 = _dense(g, p1), _dense(g, p2)
    balls = g.ball_indices
    for j in range(g.order):
        heard = sum((x1[i] for i in balls[1][j]), Fraction(0))
        heard += sum((x2[i] for i in balls[2][j]), Fraction(0))
        if heard < 1:
            return Feasibility(False, g.vertex(j))
    return Feasibility(True, None)


def lower_bound_from_multipacking(w: FractionalWeighting) -> int:
    """Certified integer lower bound ceil(cost); feasibility is always re-checked."""
    check = is_feasible_multipacking(w)
    if not check.feasible:
        v, r = check.witness
        raise InfeasibleCertificate(
            f"multipacking violates the radius-{r} constraint at {tuple(v)}", check.witness
        )
    return math.ceil(mp_cost(w))
