"""Integer 2-limited broadcasts and the domination predicate."""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, NamedTuple, Optional

from .errors import InvalidStrength
from .grid import GridGraph, Vertex, ball

MAX_STRENGTH = 2


class Domination(NamedTuple):
    dominating: bool
    witness: Optional[Vertex]

    def __bool__(self) -> bool:
        return self.dominating


@dataclass(frozen=True)
class Broadcast:
    """Strength assignment on a grid; vertices not listed broadcast at strength 0."""

    graph: GridGraph
    strength: Mapping[Vertex, int] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for v, s in dict(self.strength).items():
            self.graph.check(v)
            if isinstance(s, bool) or not isinstance(s, int) or not 0 <= s <= MAX_STRENGTH:
                raise InvalidStrength(f"strength at {tuple(v)} must be 0, 1 or 2, got {s!r}")
            if s:
                clean[Vertex(*v)] = s
        object.__setattr__(self, "strength", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_triples(cls, g: GridGraph, triples: Iterable[tuple[int, int, int]]) -> "Broadcast":
        """Build from (row, col, strength); repeated vertices keep the larger strength."""
        acc: dict[Vertex, int] = {}
        for r, c, s in triples:
            v = Vertex(r, c)
            acc[v] = max(acc.get(v, 0), s)
        return cls(g, acc)

    def __getitem__(self, v) -> int:
        return self.strength.get(Vertex(*v), 0)

    def broadcasters(self) -> list[tuple[Vertex, int]]:
        return list(self.strength.items())

    @property
    def cost(self) -> int:
        return sum(self.strength.values())

    def heard(self) -> set[Vertex]:
        out: set[Vertex] = set()
        for v, s in self.strength.items():
            out |= ball(self.graph, v, s)
        return out

    def render(self) -> str:
        """ASCII dump, one line per row; '.' marks strength 0."""
        lines = []
        for r in range(self.graph.m):
            lines.append("".join(str(self.strength.get(Vertex(r, c), ".")) for c in range(self.graph.n)))
        return "\n".join(lines)


def cost(b: Broadcast) -> int:
    return b.cost


def is_dominating(b: Broadcast) -> Domination:
    heard = b.heard()
    if len(heard) == b.graph.order:
        return Domination(True, None)
    for v in b.graph.vertices():
        if v not in heard:
            return Domination(False, v)
    raise AssertionError("unreachable")
